"""Time formatting utilities."""


def format_elapsed(seconds: float) -> str:
    """Format elapsed wall time for log messages.

    Args:
        seconds: Elapsed time in seconds.

    Returns:
        Milliseconds below one second (`12.34 ms`), seconds otherwise (`1.23 s`).

    """
    if seconds < 1:
        return f"{seconds * 1000:.2f} ms"
    return f"{seconds:.2f} s"
