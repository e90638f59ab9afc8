"""Euclidean Jordan algebras as direct sums of simple factors.

Supported factors: the real line, spin factors, real symmetric matrices,
and complex Hermitian matrices. Every factor exposes an orthonormal
coordinate chart for the trace inner product, so <a, b> is the plain
Euclidean dot product of chart coordinates and adjoints of linear maps
are transposes.

Chart conventions (the sqrt(2) scalings make the chart orthonormal):

* RealLine       -- one coordinate, the element itself.
* Spin(m)        -- natural element (x0, xbar) in R x R^{m-1} stored as
                    sqrt(2) * (x0, xbar).
* SymMatrix(k)   -- upper triangle in row-major order, off-diagonal
                    entries scaled by sqrt(2).
* HermMatrix(k)  -- k real diagonal entries, then for each i<j the pair
                    (sqrt(2)*Re A_ij, sqrt(2)*Im A_ij) in row-major order.

All kernels are batched: coordinate arrays have shape (..., dim) and the
leading axes broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DescriptorError

_SQRT2 = math.sqrt(2.0)


class RealLine:
    """The one-dimensional algebra R with ordinary multiplication."""

    kind = "rn"
    dim = 1
    rank = 1

    def unit_coords(self) -> np.ndarray:
        return np.ones(1)

    def trace_vector(self) -> np.ndarray:
        return np.ones(1)

    def jordan(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return u * v

    def decomp(self, u: np.ndarray):
        return u

    def eigenvalues(self, dec) -> np.ndarray:
        return dec

    def rebuild(self, dec, lam: np.ndarray) -> np.ndarray:
        return np.array(lam, copy=True)

    def frame(self, dec) -> np.ndarray:
        shape = dec.shape[:-1] + (1, 1)
        return np.ones(shape)

    def random_frame(self, rng: np.random.Generator) -> np.ndarray:
        return np.ones((1, 1))

    def __repr__(self):
        return "RealLine()"

    def __eq__(self, other):
        return isinstance(other, RealLine)

    def __hash__(self):
        return hash(self.kind)


class Spin:
    """Spin factor on R^m: (x0, xbar) o (y0, ybar) = (x0 y0 + xbar.ybar,
    x0 ybar + y0 xbar). Rank 2, eigenvalues x0 +/- |xbar|."""

    kind = "spin"
    rank = 2

    def __init__(self, m: int):
        if m < 2:
            raise DescriptorError(f"spin factor needs dimension >= 2, got {m}")
        self.m = m
        self.dim = m

    def unit_coords(self) -> np.ndarray:
        e = np.zeros(self.dim)
        e[0] = _SQRT2
        return e

    def trace_vector(self) -> np.ndarray:
        t = np.zeros(self.dim)
        t[0] = _SQRT2
        return t

    def jordan(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        u0, ub = u[..., :1], u[..., 1:]
        v0, vb = v[..., :1], v[..., 1:]
        w0 = (u0 * v0 + (ub * vb).sum(axis=-1, keepdims=True)) / _SQRT2
        wb = (u0 * vb + v0 * ub) / _SQRT2
        return np.concatenate([w0, wb], axis=-1)

    def decomp(self, u: np.ndarray):
        x0 = u[..., 0] / _SQRT2
        xb = u[..., 1:] / _SQRT2
        rho = np.sqrt((xb * xb).sum(axis=-1))
        # canonical direction for xbar = 0: first coordinate axis
        w = np.zeros_like(xb)
        safe = rho > 0.0
        w[..., 0] = 1.0
        if np.any(safe):
            w = np.where(safe[..., None], np.divide(xb, np.where(safe, rho, 1.0)[..., None]), w)
        return x0, rho, w

    def eigenvalues(self, dec) -> np.ndarray:
        x0, rho, _ = dec
        return np.stack([x0 + rho, x0 - rho], axis=-1)

    def rebuild(self, dec, lam: np.ndarray) -> np.ndarray:
        _, _, w = dec
        x0 = (lam[..., 0] + lam[..., 1]) / 2.0
        xb = w * ((lam[..., 0] - lam[..., 1]) / 2.0)[..., None]
        return np.concatenate([x0[..., None], xb], axis=-1) * _SQRT2

    def frame(self, dec) -> np.ndarray:
        """Both primitive idempotents, shape (..., 2, dim)."""
        _, _, w = dec
        ones = np.ones(w.shape[:-1] + (1,))
        c_plus = np.concatenate([ones, w], axis=-1) / _SQRT2
        c_minus = np.concatenate([ones, -w], axis=-1) / _SQRT2
        return np.stack([c_plus, c_minus], axis=-2)

    def random_frame(self, rng: np.random.Generator) -> np.ndarray:
        w = rng.standard_normal(self.m - 1)
        w /= np.linalg.norm(w)
        ones = np.ones(1)
        return np.stack([np.concatenate([ones, w]), np.concatenate([ones, -w])]) / _SQRT2

    def __repr__(self):
        return f"Spin({self.m})"

    def __eq__(self, other):
        return isinstance(other, Spin) and other.m == self.m

    def __hash__(self):
        return hash((self.kind, self.m))


class SymMatrix:
    """Real symmetric k x k matrices with the symmetrized product (XY+YX)/2."""

    kind = "sym"

    def __init__(self, k: int):
        if k < 1:
            raise DescriptorError(f"sym factor needs size >= 1, got {k}")
        self.k = k
        self.rank = k
        self.dim = k * (k + 1) // 2
        self._iu = np.triu_indices(k)
        self._scale = np.where(self._iu[0] == self._iu[1], 1.0, _SQRT2)

    def to_dense(self, u: np.ndarray) -> np.ndarray:
        x = np.zeros(u.shape[:-1] + (self.k, self.k))
        vals = u / self._scale
        x[..., self._iu[0], self._iu[1]] = vals
        x[..., self._iu[1], self._iu[0]] = vals
        return x

    def from_dense(self, x: np.ndarray) -> np.ndarray:
        return x[..., self._iu[0], self._iu[1]] * self._scale

    def unit_coords(self) -> np.ndarray:
        return self.from_dense(np.eye(self.k))

    def trace_vector(self) -> np.ndarray:
        t = np.zeros(self.dim)
        t[self._iu[0] == self._iu[1]] = 1.0
        return t

    def jordan(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        x, y = self.to_dense(u), self.to_dense(v)
        return self.from_dense((x @ y + y @ x) / 2.0)

    def decomp(self, u: np.ndarray):
        lam, q = np.linalg.eigh(self.to_dense(u))
        return lam[..., ::-1], q[..., :, ::-1]  # descending

    def eigenvalues(self, dec) -> np.ndarray:
        return dec[0]

    def rebuild(self, dec, lam: np.ndarray) -> np.ndarray:
        q = dec[1]
        x = np.einsum("...ik,...k,...jk->...ij", q, lam, q)
        return self.from_dense(x)

    def frame(self, dec) -> np.ndarray:
        q = dec[1]
        proj = np.einsum("...ij,...kj->...jik", q, q)  # (..., rank, k, k)
        return self.from_dense(proj)

    def random_frame(self, rng: np.random.Generator) -> np.ndarray:
        g = rng.standard_normal((self.k, self.k))
        q, r = np.linalg.qr(g)
        q = q * np.sign(np.diagonal(r))
        proj = np.einsum("ij,kj->jik", q, q)
        return self.from_dense(proj)

    def __repr__(self):
        return f"SymMatrix({self.k})"

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and other.k == self.k

    def __hash__(self):
        return hash((self.kind, self.k))


class HermMatrix:
    """Complex Hermitian k x k matrices with the symmetrized product."""

    kind = "herm"

    def __init__(self, k: int):
        if k < 1:
            raise DescriptorError(f"herm factor needs size >= 1, got {k}")
        self.k = k
        self.rank = k
        self.dim = k * k
        iu = np.triu_indices(k, 1)
        self._iu = iu
        self._n_off = iu[0].size

    def to_dense(self, u: np.ndarray) -> np.ndarray:
        k = self.k
        a = np.zeros(u.shape[:-1] + (k, k), dtype=complex)
        diag = u[..., :k]
        re = u[..., k : k + self._n_off] / _SQRT2
        im = u[..., k + self._n_off :] / _SQRT2
        a[..., np.arange(k), np.arange(k)] = diag
        a[..., self._iu[0], self._iu[1]] = re + 1j * im
        a[..., self._iu[1], self._iu[0]] = re - 1j * im
        return a

    def from_dense(self, a: np.ndarray) -> np.ndarray:
        k = self.k
        diag = a[..., np.arange(k), np.arange(k)].real
        off = a[..., self._iu[0], self._iu[1]]
        return np.concatenate(
            [diag, off.real * _SQRT2, off.imag * _SQRT2], axis=-1
        )

    def unit_coords(self) -> np.ndarray:
        return self.from_dense(np.eye(self.k, dtype=complex))

    def trace_vector(self) -> np.ndarray:
        t = np.zeros(self.dim)
        t[: self.k] = 1.0
        return t

    def jordan(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        x, y = self.to_dense(u), self.to_dense(v)
        return self.from_dense((x @ y + y @ x) / 2.0)

    def decomp(self, u: np.ndarray):
        lam, q = np.linalg.eigh(self.to_dense(u))
        return lam[..., ::-1], q[..., :, ::-1]

    def eigenvalues(self, dec) -> np.ndarray:
        return dec[0]

    def rebuild(self, dec, lam: np.ndarray) -> np.ndarray:
        q = dec[1]
        a = np.einsum("...ik,...k,...jk->...ij", q, lam, q.conj())
        return self.from_dense(a)

    def frame(self, dec) -> np.ndarray:
        q = dec[1]
        proj = np.einsum("...ij,...kj->...jik", q, q.conj())
        return self.from_dense(proj)

    def random_frame(self, rng: np.random.Generator) -> np.ndarray:
        g = rng.standard_normal((self.k, self.k)) + 1j * rng.standard_normal((self.k, self.k))
        q, r = np.linalg.qr(g)
        d = np.diagonal(r)
        q = q * (d / np.abs(d))
        proj = np.einsum("ij,kj->jik", q, q.conj())
        return self.from_dense(proj)

    def __repr__(self):
        return f"HermMatrix({self.k})"

    def __eq__(self, other):
        return isinstance(other, HermMatrix) and other.k == self.k

    def __hash__(self):
        return hash((self.kind, self.k))


SimpleFactor = RealLine | Spin | SymMatrix | HermMatrix


@dataclass(frozen=True, eq=False)
class Algebra:
    """A direct sum of simple factors with precomputed chart layout."""

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise DescriptorError("algebra needs at least one factor")
        dims = [f.dim for f in self.factors]
        ranks = [f.rank for f in self.factors]
        offs = np.concatenate([[0], np.cumsum(dims)])
        roffs = np.concatenate([[0], np.cumsum(ranks)])
        object.__setattr__(self, "dim", int(offs[-1]))
        object.__setattr__(self, "rank", int(roffs[-1]))
        object.__setattr__(
            self, "slices", tuple(slice(int(a), int(b)) for a, b in zip(offs[:-1], offs[1:]))
        )
        object.__setattr__(
            self,
            "rank_slices",
            tuple(slice(int(a), int(b)) for a, b in zip(roffs[:-1], roffs[1:])),
        )
        tvec = np.concatenate([f.trace_vector() for f in self.factors])
        tvec.flags.writeable = False
        object.__setattr__(self, "_trace_vec", tvec)

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"Algebra({self.descriptor!r})"

    @property
    def descriptor(self) -> str:
        """Canonical descriptor string; consecutive real lines merge to rn:N."""
        toks = []
        run = 0
        for f in self.factors:
            if isinstance(f, RealLine):
                run += 1
                continue
            if run:
                toks.append(f"rn:{run}")
                run = 0
            size = f.m if isinstance(f, Spin) else f.k
            toks.append(f"{f.kind}:{size}")
        if run:
            toks.append(f"rn:{run}")
        return ",".join(toks)

    # -- batched kernels ------------------------------------------------

    def unit_coords(self) -> np.ndarray:
        return np.concatenate([f.unit_coords() for f in self.factors])

    def trace(self, coords: np.ndarray) -> np.ndarray:
        return coords @ self._trace_vec

    def jordan(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        u, v = np.broadcast_arrays(u, v)
        out = np.empty_like(u, dtype=float)
        for f, sl in zip(self.factors, self.slices):
            out[..., sl] = f.jordan(u[..., sl], v[..., sl])
        return out

    def decomp(self, coords: np.ndarray) -> list:
        return [f.decomp(coords[..., sl]) for f, sl in zip(self.factors, self.slices)]

    def eigenvalues_from(self, decs: list) -> np.ndarray:
        return np.concatenate(
            [f.eigenvalues(d) for f, d in zip(self.factors, decs)], axis=-1
        )

    def eigenvalues(self, coords: np.ndarray) -> np.ndarray:
        """Eigenvalue vector per batch entry, factor-concatenated (each
        factor's block descending); not globally sorted."""
        return self.eigenvalues_from(self.decomp(coords))

    def rebuild(self, decs: list, lam: np.ndarray) -> np.ndarray:
        parts = [
            f.rebuild(d, lam[..., rsl])
            for f, d, rsl in zip(self.factors, decs, self.rank_slices)
        ]
        return np.concatenate(parts, axis=-1)

    def frame_coords(self, decs: list) -> np.ndarray:
        """All primitive idempotents, shape (..., rank, dim); block j holds
        zeros outside its own factor."""
        lead = np.broadcast_shapes(
            *[np.asarray(f.eigenvalues(d)).shape[:-1] for f, d in zip(self.factors, decs)]
        )
        out = np.zeros(lead + (self.rank, self.dim))
        for f, d, sl, rsl in zip(self.factors, decs, self.slices, self.rank_slices):
            out[..., rsl, sl] = f.frame(d)
        return out

    def random_frame(self, rng: np.random.Generator) -> np.ndarray:
        """A random Jordan frame, shape (rank, dim)."""
        out = np.zeros((self.rank, self.dim))
        for f, sl, rsl in zip(self.factors, self.slices, self.rank_slices):
            out[rsl, sl] = f.random_frame(rng)
        return out


def parse_algebra(descriptor: str) -> Algebra:
    """Parse the descriptor grammar, e.g. 'rn:5', 'spin:4', 'sym:2,spin:3'."""
    factors: list = []
    if not descriptor or not descriptor.strip():
        raise DescriptorError("empty algebra descriptor")
    for tok in descriptor.split(","):
        tok = tok.strip()
        if ":" not in tok:
            raise DescriptorError(f"malformed factor {tok!r} (expected kind:size)")
        kind, _, num = tok.partition(":")
        kind = kind.strip().lower()
        try:
            size = int(num)
        except ValueError:
            raise DescriptorError(f"malformed factor size in {tok!r}") from None
        if size < 1:
            raise DescriptorError(f"factor size must be positive in {tok!r}")
        if kind == "rn":
            factors.extend(RealLine() for _ in range(size))
        elif kind == "spin":
            factors.append(Spin(size))
        elif kind == "sym":
            factors.append(SymMatrix(size))
        elif kind == "herm":
            factors.append(HermMatrix(size))
        else:
            raise DescriptorError(f"unknown factor kind {kind!r}")
    return Algebra(tuple(factors))
