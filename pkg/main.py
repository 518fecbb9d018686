"""Точка входа в aldm-sim."""

import sys

from loguru import logger

from src.cli import main as cli_main


def main() -> None:
    """Запустить командную строку.

    Передаёт код завершения прогона в sys.exit и корректно завершает
    работу при KeyboardInterrupt или неожиданных ошибках.
    """
    code = 1
    try:
        code = cli_main()
    except KeyboardInterrupt:
        logger.info("Прогон остановлен пользователем")
    except Exception as e:
        logger.exception(f"Неожиданная ошибка: {e}")
    finally:
        logger.debug("Завершение работы")
    sys.exit(code)


if __name__ == "__main__":
    main()
