import sys
from pathlib import Path
from typing import Iterable, Optional

from domain.errors import ExtractionError

STDIO = "-"


def read_text(path: str) -> str:
    """Reads a UTF-8 file, or standard input for "-"."""
    if path == STDIO:
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ExtractionError(f"cannot read {path}: {e.strerror or e}") from None


def write_lines(path: Optional[str], lines: Iterable[str]) -> None:
    """Writes newline-terminated lines to `path`, or standard output when it is None or "-"."""
    if path is None or path == STDIO:
        for line in lines:
            sys.stdout.write(line + "\n")
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for line in lines:
                handle.write(line + "\n")
    except OSError as e:
        raise ExtractionError(f"cannot write {path}: {e.strerror or e}") from None


def write_text(path: Optional[str], content: str) -> None:
    if path is None or path == STDIO:
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(content, encoding="utf-8")
    except OSError as e:
        raise ExtractionError(f"cannot write {path}: {e.strerror or e}") from None
