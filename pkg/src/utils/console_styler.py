import sys
from typing import Dict, TextIO

from colorama import Fore, Style


class ConsoleStyler:
    COLORS = {
        "info": Fore.GREEN,
        "warning": Fore.YELLOW,
        "error": Fore.RED,
        "debug": Fore.CYAN,
        "default": Fore.WHITE
    }

    @staticmethod
    def print_log(level: str, message: Dict[str, str], stream: TextIO = None) -> None:
        """Prints a colored diagnostic line; defaults to standard error."""
        stream = stream or sys.stderr
        color = ConsoleStyler.COLORS.get(level, Fore.WHITE)
        symbol = message.get('symbol', '')
        prefix = f"[{symbol}] " if symbol else ""
        print(f"{color}{prefix}{message.get('message', '')}{Style.RESET_ALL}", file=stream)
