"""Frame range parsing for the command line."""

FRAME_RANGE_SEPARATOR = ".."


def parse_frame_range(text: str) -> range:
    """Parse an inclusive frame range.

    Args:
        text: `a..b`, or a single index `a`.

    Returns:
        Range covering both ends.

    Raises:
        ValueError: If the text is not a valid non-empty range of non-negative indices.

    """
    first, sep, last = text.strip().partition(FRAME_RANGE_SEPARATOR)
    try:
        start = int(first)
        stop = int(last) if sep else start
    except ValueError as e:
        raise ValueError(f"invalid frame range {text!r}, expected a..b") from e
    if start < 0 or stop < start:
        raise ValueError(f"invalid frame range {text!r}, expected 0 <= a <= b")
    return range(start, stop + 1)
