from pathlib import Path

from app.core.exceptions import FileAccessError


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileAccessError(str(path), exc.strerror or type(exc).__name__) from exc
    except UnicodeDecodeError as exc:
        raise FileAccessError(str(path), "not valid UTF-8") from exc


def write_text(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise FileAccessError(str(path), exc.strerror or type(exc).__name__) from exc
