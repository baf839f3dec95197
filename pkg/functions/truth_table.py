"""UFN1 truth-table files.

Layout: b"UFN1", p as one unsigned byte, N as uint32 little-endian, then
p^N values, one unsigned byte each, in lexicographic point order.
"""

import logging
import os
import struct
import tempfile
from pathlib import Path
from typing import Union

import numpy as np

from field import FormatError, check_prime
from field.errors import DomainError

from .finite_function import FiniteFunction

logger = logging.getLogger(__name__)

MAGIC = b"UFN1"
HEADER = struct.Struct("<4sBI")


def read_table(path: Union[str, Path], cap: int = 1 << 26) -> FiniteFunction:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise FormatError(f"cannot read truth table {path}: {e}") from e
    if len(data) < HEADER.size:
        raise FormatError(f"{path}: truncated header")
    magic, p, N = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    try:
        check_prime(p)
    except DomainError as e:
        raise FormatError(f"{path}: {e}") from e
    size = p ** N
    if size > cap:
        raise FormatError(f"{path}: {size} points exceed the dense cap {cap}")
    body = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size)
    if body.size != size:
        raise FormatError(f"{path}: expected {size} values, found {body.size}")
    if body.size and int(body.max()) >= p:
        raise FormatError(f"{path}: value {int(body.max())} not reduced mod {p}")
    logger.debug(f"read {path}: p={p}, N={N}")
    return FiniteFunction.dense(p, N, body, name=Path(path).stem)


def write_table(f: FiniteFunction, path: Union[str, Path]) -> Path:
    """Write f atomically; lazy functions are materialized first."""
    path = Path(path)
    table = f.to_dense().table
    payload = HEADER.pack(MAGIC, f.p, f.N) + table.astype(np.uint8).tobytes()
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path('.'), suffix='.tmp')
    try:
        with os.fdopen(fd, 'wb') as out:
            out.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
