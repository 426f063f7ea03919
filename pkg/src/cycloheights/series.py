"""Dense truncated integer power series with binomial factor kernels.

A series is a fixed-length ``int64`` buffer holding the coefficients of
``1, x, x**2, ...``. The only operations needed to expand a product of
cyclotomic-style binomials are multiplication and division by
``(1 - x**k)``; both are single strided passes over the buffer:

* multiply: ``out[m] = s[m] - s[m - k]``
* divide:   ``out[m] = s[m] + out[m - k]``  (a cumulative sum with stride k)

Every pass is overflow checked. The fast path proves a magnitude bound up
front and then runs the vectorized kernel; when the bound cannot be proven
the pass is replayed with Python integers to locate the first coefficient
that would leave the signed 64-bit range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceError, SeriesOverflowError

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

# Magnitudes below this are safe for a float64 bound estimate to be trusted.
_FLOAT_SAFE = 2.0**62


def _absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return max(int(a.max()), -int(a.min()))


def _first_out_of_range(values) -> int | None:
    for i, v in enumerate(values):
        if v > INT64_MAX or v < INT64_MIN:
            return i
    return None


@dataclass(eq=False)
class CoeffSeries:
    """Truncated power series with signed 64-bit coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = self.coeffs
        if not isinstance(c, np.ndarray):
            c = list(c)
            bad = _first_out_of_range(c)
            if bad is not None:
                raise SeriesOverflowError(bad)
            c = np.array(c, dtype=np.int64)
        elif c.dtype != np.int64:
            c = c.astype(np.int64)
        if c.ndim != 1 or c.size < 1:
            raise DomainError("a series needs at least one coefficient")
        self.coeffs = c

    @property
    def truncation_len(self) -> int:
        return int(self.coeffs.size)

    def __len__(self):
        return self.truncation_len

    def __getitem__(self, m):
        return self.coeffs[m]

    def __eq__(self, other):
        if isinstance(other, CoeffSeries):
            other = other.coeffs
        other = np.asarray(other)
        return other.shape == self.coeffs.shape and bool(np.array_equal(self.coeffs, other))

    def tolist(self) -> list[int]:
        return [int(v) for v in self.coeffs]

    def copy(self) -> "CoeffSeries":
        return CoeffSeries(self.coeffs.copy())

    def __repr__(self):
        head = ", ".join(str(int(v)) for v in self.coeffs[:8])
        more = ", ..." if self.coeffs.size > 8 else ""
        return f"CoeffSeries([{head}{more}], truncation_len={self.truncation_len})"


def one(truncation_len: int) -> CoeffSeries:
    """The series ``1`` truncated to ``truncation_len`` terms."""
    if truncation_len < 1:
        raise DomainError(f"truncation_len must be >= 1, got {truncation_len}")
    c = np.zeros(int(truncation_len), dtype=np.int64)
    c[0] = 1
    return CoeffSeries(c)


def _check_stride(k):
    if int(k) != k or k < 1:
        raise DomainError(f"binomial stride must be a positive integer, got {k}")
    return int(k)


# -- in-place kernels on raw int64 buffers ---------------------------------


def imul_binomial(a: np.ndarray, k: int, offset: int = 0) -> np.ndarray:
    """Multiply buffer ``a`` by ``(1 - x**k)`` in place.

    ``offset`` only shifts the index reported in an overflow error.
    """
    k = _check_stride(k)
    n = a.size
    if k >= n:
        return a
    if 2 * _absmax(a) > INT64_MAX:
        exact = a[k:].astype(object) - a[: n - k].astype(object)
        bad = _first_out_of_range(exact)
        if bad is not None:
            raise SeriesOverflowError(offset + k + bad)
    # numpy buffers overlapping operands, so the right side reads old values
    a[k:] -= a[: n - k]
    return a


def _class_cumsum(a: np.ndarray, k: int) -> None:
    n = a.size
    full = (n // k) * k
    if full:
        view = a[:full].reshape(-1, k)
        np.cumsum(view, axis=0, out=view)
    t = n - full
    if t and full:
        a[full:] += a[full - k : full - k + t]


def idiv_binomial(a: np.ndarray, k: int, offset: int = 0) -> np.ndarray:
    """Divide buffer ``a`` by ``(1 - x**k)`` in place (stride-k running sum)."""
    k = _check_stride(k)
    n = a.size
    if k >= n:
        return a
    rows = -(-n // k)
    if _absmax(a) * rows > INT64_MAX:
        absf = np.abs(a.astype(np.float64))
        _class_cumsum(absf, k)
        if absf.max() >= _FLOAT_SAFE:
            exact = a.astype(object)
            pad = rows * k - n
            if pad:
                exact = np.concatenate([exact, np.zeros(pad, dtype=object)])
            exact = np.cumsum(exact.reshape(-1, k), axis=0).ravel()[:n]
            bad = _first_out_of_range(exact)
            if bad is not None:
                raise SeriesOverflowError(offset + bad)
    _class_cumsum(a, k)
    return a


def _checked_combine(x: np.ndarray, y: np.ndarray, sign: int, offset: int) -> np.ndarray:
    if _absmax(x) + _absmax(y) > INT64_MAX:
        ex = x.astype(object) + sign * y.astype(object)
        bad = _first_out_of_range(ex)
        if bad is not None:
            raise SeriesOverflowError(offset + bad)
    return x + y if sign > 0 else x - y


# -- pure wrappers ---------------------------------------------------------


def mul_binomial(s: CoeffSeries, k: int) -> CoeffSeries:
    """Return ``s * (1 - x**k)`` truncated to the length of ``s``."""
    return CoeffSeries(imul_binomial(s.coeffs.copy(), k))


def div_binomial(s: CoeffSeries, k: int) -> CoeffSeries:
    """Return ``s / (1 - x**k)`` as a truncated formal power series."""
    return CoeffSeries(idiv_binomial(s.coeffs.copy(), k))


def max_abs(s: CoeffSeries | np.ndarray) -> tuple[int, int]:
    """Largest coefficient magnitude and the first index attaining it."""
    c = s.coeffs if isinstance(s, CoeffSeries) else np.asarray(s, dtype=np.int64)
    if c.size and int(c.min()) == INT64_MIN:
        return 2**63, int(np.argmax(c == INT64_MIN))
    mags = np.abs(c)
    i = int(np.argmax(mags))
    return int(mags[i]), i


def apply_factors(length: int, factors: Iterable[tuple[str, int]]) -> CoeffSeries:
    """Expand a product of ``(1 - x**k)**(+-1)`` factors from the seed ``1``.

    ``factors`` is a sequence of ``("mul", k)`` / ``("div", k)`` pairs,
    applied in the given order.
    """
    buf = one(length).coeffs
    for op, k in factors:
        if op == "mul":
            imul_binomial(buf, k)
        elif op == "div":
            idiv_binomial(buf, k)
        else:
            raise DomainError(f"unknown factor op {op!r}")
    return CoeffSeries(buf)


# -- blocked evaluation for products too long to hold densely --------------


class _StridePass:
    """One binomial pass fed block by block, carrying a stride-k history."""

    def __init__(self, op: str, k: int, block: int):
        self.op = op
        self.k = k
        self.ring = k >= block
        # positions < 0 read as zero
        self.hist = np.zeros(k, dtype=np.int64)

    def _ring_slices(self, m0, b):
        start = m0 % self.k
        if start + b <= self.k:
            return [(slice(start, start + b), slice(0, b))]
        first = self.k - start
        return [(slice(start, self.k), slice(0, first)), (slice(0, b - first), slice(first, b))]

    def feed(self, x: np.ndarray, m0: int) -> np.ndarray:
        b = x.size
        k = self.k
        if self.ring:
            # hist[m % k] holds the stride-k predecessor of position m
            out = np.empty_like(x)
            for hs, xs in self._ring_slices(m0, b):
                old = self.hist[hs]
                if self.op == "mul":
                    out[xs] = _checked_combine(x[xs], old, -1, m0 + xs.start)
                    self.hist[hs] = x[xs]
                else:
                    out[xs] = _checked_combine(x[xs], old, +1, m0 + xs.start)
                    self.hist[hs] = out[xs]
            return out
        full = np.concatenate([self.hist, x])
        if self.op == "mul":
            out = _checked_combine(x, full[:b], -1, m0)
            self.hist = full[-k:].copy()
            return out
        idiv_binomial(full, k, offset=m0 - k)
        self.hist = full[-k:].copy()
        return full[k:]


def stream_max_abs(
    length: int,
    factors: Sequence[tuple[str, int]],
    block: int = 1 << 20,
    budget: int | None = None,
) -> tuple[int, int]:
    """``max_abs`` of ``apply_factors(length, factors)`` without the dense buffer.

    Memory is the block plus one history window per factor whose stride is
    shorter than ``length``; ``budget`` caps that total (in coefficients).
    """
    if length < 1:
        raise DomainError("length must be >= 1")
    block = max(1, min(int(block), int(length)))
    live = [(op, _check_stride(k)) for op, k in factors if k < length]
    for op, _ in live:
        if op not in ("mul", "div"):
            raise DomainError(f"unknown factor op {op!r}")
    need = block + sum(k for _, k in live)
    if budget is not None and need > budget:
        raise ResourceError(f"streamed evaluation needs {need} coefficients, budget is {budget}")
    passes = [_StridePass(op, k, block) for op, k in live]
    best, best_at = -1, 0
    for m0 in range(0, length, block):
        b = min(block, length - m0)
        x = np.zeros(b, dtype=np.int64)
        if m0 == 0:
            x[0] = 1
        for ps in passes:
            x = ps.feed(x, m0)
        v, i = max_abs(x)
        if v > best:
            best, best_at = v, m0 + i
    return best, best_at
