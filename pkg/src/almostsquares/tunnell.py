"""Tunnell's criterion from representation counts of four ternary forms."""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .arith import ResourceError, is_squarefree, sfp

# form id -> coefficients of (x^2, y^2, z^2)
FORMS = {
    0: (2, 1, 8),
    1: (2, 1, 32),
    2: (4, 1, 8),
    3: (4, 1, 32),
}
FORM_IDS = {coeffs: fid for fid, coeffs in FORMS.items()}

_DUMP_MAGIC = b"THTA"


def _unary_theta(coeff: int, limit: int) -> np.ndarray:
    """Coefficients of sum_{x in Z} q^(coeff x^2) up to q^limit."""
    out = np.zeros(limit + 1, dtype=np.int64)
    top = math.isqrt(limit // coeff)
    out[0] = 1
    squares = coeff * np.arange(1, top + 1, dtype=np.int64) ** 2
    out[squares] = 2
    return out


def _convolve(f: np.ndarray, g: np.ndarray, limit: int) -> np.ndarray:
    # exact integer convolution via FFT; inputs are small nonnegative counts
    size = 1 << (2 * limit + 1).bit_length()
    prod = np.fft.rfft(f.astype(np.float64), size) * np.fft.rfft(g.astype(np.float64), size)
    raw = np.fft.irfft(prod, size)[: limit + 1]
    out = np.rint(raw)
    err = np.max(np.abs(raw - out)) if len(raw) else 0.0
    if err > 0.25:
        raise ArithmeticError(f"FFT rounding error {err} too large for exact counts")
    return out.astype(np.int64)


@dataclass(frozen=True)
class ThetaTable:
    form: tuple[int, int, int]
    limit: int
    counts: np.ndarray

    def __getitem__(self, n: int) -> int:
        return int(self.counts[n])

    def dump(self, path) -> None:
        """Write ``THTA``, form id (u32), limit (u32), then int32 counts, all little-endian."""
        with open(path, "wb") as fh:
            fh.write(_DUMP_MAGIC)
            fh.write(struct.pack("<II", FORM_IDS[self.form], self.limit))
            fh.write(self.counts.astype("<i4").tobytes())

    @classmethod
    def load(cls, path) -> "ThetaTable":
        with open(path, "rb") as fh:
            if fh.read(4) != _DUMP_MAGIC:
                raise ValueError(f"{path}: not a theta table dump")
            fid, limit = struct.unpack("<II", fh.read(8))
            counts = np.frombuffer(fh.read(), dtype="<i4")
        if fid not in FORMS or len(counts) != limit + 1:
            raise ValueError(f"{path}: corrupt theta table header")
        counts = counts.astype(np.int32)
        counts.flags.writeable = False
        return cls(FORMS[fid], limit, counts)


def build_theta(form: tuple[int, int, int], limit: int) -> ThetaTable:
    """Representation counts of ``form`` for 0..limit as a product of unary thetas."""
    form = tuple(form)
    if form not in FORM_IDS:
        raise ValueError(f"unsupported form {form}")
    if limit < 1:
        raise ValueError("limit must be >= 1")
    try:
        cx, cy, cz = (_unary_theta(c, limit) for c in form)
        counts = _convolve(_convolve(cx, cz, limit), cy, limit)
    except MemoryError as exc:
        raise ResourceError(f"cannot allocate theta table of size {limit}") from exc
    if counts.max() > np.iinfo(np.int32).max:
        raise OverflowError("representation count exceeds int32")
    counts = counts.astype(np.int32)
    counts.flags.writeable = False
    return ThetaTable(form, limit, counts)


class TunnellTables:
    """The four theta tables at a shared limit."""

    def __init__(self, limit: int):
        self.limit = limit
        self.tables = {coeffs: build_theta(coeffs, limit) for coeffs in FORMS.values()}

    def __getitem__(self, form) -> ThetaTable:
        return self.tables[tuple(form)]

    def covers(self, n: int) -> bool:
        return (n if n % 2 else n // 2) <= self.limit


def tunnell_counts(n: int, tables: TunnellTables) -> tuple[int, int]:
    """``(count with 32 z^2, count with 8 z^2)`` for the relevant parity of ``n``."""
    if n % 2:
        return tables[(2, 1, 32)][n], tables[(2, 1, 8)][n]
    m = n // 2
    return tables[(4, 1, 32)][m], tables[(4, 1, 8)][m]


def tunnell_not_congruent(n: int, tables: TunnellTables) -> bool:
    """True when Tunnell's inequality holds, proving ``n`` is not congruent."""
    if not is_squarefree(n):
        raise ValueError(f"{n} is not squarefree")
    if not tables.covers(n):
        raise ValueError(f"tables up to {tables.limit} do not cover {n}")
    with32, with8 = tunnell_counts(n, tables)
    return 2 * with32 != with8


def congruent_candidate(a: int, b: int, c: int, tables: TunnellTables) -> bool:
    """Keep the triple unless Tunnell proves ``sfp(abc)`` is not congruent."""
    return not tunnell_not_congruent(sfp(a * b * c), tables)
