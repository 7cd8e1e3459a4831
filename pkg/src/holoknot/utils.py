__all__ = ["atomic_write_text", "sha256_digest", "read_text"]

import hashlib
import os
import pathlib
import tempfile

from .errors import InputError


def read_text(path: str | pathlib.Path) -> str:
    """Read a UTF-8 text file.

    Raises
    ------
    InputError
        If the file cannot be read.
    """
    try:
        return pathlib.Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"Cannot read {path}: {e}") from e


def sha256_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def atomic_write_text(path: str | pathlib.Path, text: str) -> None:
    """Write ``text`` to ``path`` so readers see the old file or the
    complete new one, never a partial write.

    Raises
    ------
    InputError
        If the directory is not writable.
    """
    path = pathlib.Path(path)
    directory = path.parent if str(path.parent) else pathlib.Path(".")
    try:
        descriptor, temp_name = tempfile.mkstemp(
            dir=directory, prefix=f".{path.name}.", suffix=".tmp"
        )
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e}") from e
    try:
        with os.fdopen(descriptor, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(temp_name, path)
    except BaseException:
        pathlib.Path(temp_name).unlink(missing_ok=True)
        raise
