"""Cluster-category objects and the Caldero-Chapoton cluster character for T = kQ.

An object is a module plus multiplicities of shifted projectives P_i[1]; its
character is a sum over subdimension vectors of Grassmannian Euler
characteristics with exponents read off the (antisymmetrized) Euler form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .errors import GenericityUncertified, NotPolynomialCount, SubdimensionOutOfRange
from .laurent import LaurentPoly, monomial
from .quiver import EulerData, Quiver, antisym_form_simple, euler_form, euler_matrix
from .replab import (
    Representation,
    generic_representation,
    grassmannian_euler,
    hom_dim,
    representation_from_json,
    zero_representation,
)
from .seeds import mix_seed


@lru_cache(maxsize=64)
def _euler_data_cached(key: str, n: int, arrows: tuple) -> EulerData:
    return euler_matrix(Quiver(n, arrows))


def euler_data(q: Quiver) -> EulerData:
    return _euler_data_cached(q.key(), q.n, q.arrows)


@dataclass(frozen=True)
class ClusterObject:
    """module ⊕ ⊕_i P_i[1]^{shifted[i]}."""

    module: Representation
    shifted: tuple[int, ...]

    def __post_init__(self):
        if len(self.shifted) != self.module.quiver.n:
            raise SubdimensionOutOfRange("shifted vector length must equal vertex count")
        if any(s < 0 for s in self.shifted):
            raise SubdimensionOutOfRange("shifted multiplicities must be nonnegative")

    @property
    def quiver(self) -> Quiver:
        return self.module.quiver

    def is_zero(self) -> bool:
        return self.module.is_zero() and all(s == 0 for s in self.shifted)

    def dimension_vector(self) -> tuple[int, ...]:
        """dim in the cluster category: dim(module) - E^{-t}·shifted."""
        ed = euler_data(self.quiver)
        n = self.quiver.n
        return tuple(
            self.module.dims[i] - sum(ed.Etinv[i][j] * self.shifted[j] for j in range(n))
            for i in range(n)
        )

    def to_json(self) -> dict:
        return {"module": self.module.to_json(), "shifted": list(self.shifted)}


def cluster_object_from_json(data: dict) -> ClusterObject:
    return ClusterObject(representation_from_json(data["module"]), tuple(int(x) for x in data["shifted"]))


def zero_object(q: Quiver) -> ClusterObject:
    return ClusterObject(zero_representation(q), (0,) * q.n)


def shifted_object(q: Quiver, shifted: Sequence[int]) -> ClusterObject:
    return ClusterObject(zero_representation(q), tuple(int(x) for x in shifted))


def cc_module(m: Representation, cap: int = 5_000_000, max_offset: int = 24) -> LaurentPoly:
    """The Caldero-Chapoton character of a module, by direct Grassmannian counting.

    X_M = sum_e chi(Gr_e(M)) prod_i x_i^{<S_i,e>_a - <S_i, dim M>}.
    """
    q = m.quiver
    n = q.n
    d = m.dims
    out = LaurentPoly.zero(n)
    units = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    base = [-euler_form(q, units[i], d) for i in range(n)]
    end_dim = hom_dim(m, m)
    for e in product(*(range(di + 1) for di in d)):
        g = grassmannian_euler(m, e, cap=cap, max_offset=max_offset, end_dim=end_dim)
        if g.euler == 0:
            continue
        expo = tuple(base[i] + antisym_form_simple(q, i + 1, e) for i in range(n))
        out = out + LaurentPoly(n, {expo: g.euler})
    return out


def cc_object(x: ClusterObject, cap: int = 5_000_000, max_offset: int = 24) -> LaurentPoly:
    """cc_module(module) · prod_i x_i^{shifted[i]}."""
    return cc_module(x.module, cap=cap, max_offset=max_offset) * monomial(x.quiver.n, x.shifted)


def index_of(x: ClusterObject) -> tuple[int, ...]:
    """E^t·dim(module) - shifted."""
    ed = euler_data(x.quiver)
    n = x.quiver.n
    d = x.module.dims
    return tuple(sum(ed.E[j][i] * d[j] for j in range(n)) - x.shifted[i] for i in range(n))


def coindex_of(x: ClusterObject) -> tuple[int, ...]:
    """E·dim(module) - shifted."""
    ed = euler_data(x.quiver)
    n = x.quiver.n
    d = x.module.dims
    return tuple(sum(ed.E[i][j] * d[j] for j in range(n)) - x.shifted[i] for i in range(n))


def g_vector_of_index(q: Quiver, gamma: Sequence[int]) -> tuple[int, ...]:
    """C^{-1}·gamma = -E·E^{-t}·gamma (valid when the generic cone of gamma is a module)."""
    ed = euler_data(q)
    n = q.n
    v = [sum(ed.Etinv[i][j] * gamma[j] for j in range(n)) for i in range(n)]
    return tuple(-sum(ed.E[i][j] * v[j] for j in range(n)) for i in range(n))


def cc_generic(
    q: Quiver,
    alpha: Sequence[int],
    rng_seed: int = 0,
    bound: int = 10,
    retries: int = 8,
    cap: int = 5_000_000,
    max_offset: int = 24,
) -> LaurentPoly:
    """CC(alpha) for alpha >= 0: character of the certified generic representative.

    Five independently sampled representatives must give equal characters.
    """
    alpha = tuple(int(a) for a in alpha)
    last = "no attempt"
    for attempt in range(retries):
        try:
            values = []
            for s in range(5):
                m, _ = generic_representation(q, alpha, rng_seed=mix_seed(rng_seed, attempt, s), bound=bound)
                values.append(cc_module(m, cap=cap, max_offset=max_offset))
            if all(v == values[0] for v in values[1:]):
                return values[0]
            last = "seed disagreement"
        except (NotPolynomialCount, GenericityUncertified) as exc:
            last = f"{type(exc).__name__}: {exc}"
    raise GenericityUncertified(f"CC({alpha}) failed to certify after {retries} rounds ({last})")
