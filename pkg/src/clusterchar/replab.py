"""Quiver representations with exact linear algebra.

Sampling, Hom/Ext dimensions, Krull-Schmidt decomposition via the fitting
lemma, subspace enumeration over prime fields, and Grassmannian Euler
characteristics by point counting + interpolation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    CapExceeded,
    DecompositionUncertified,
    FieldMismatch,
    GenericityUncertified,
    NegativeExt,
    NotARoot,
    NotPolynomialCount,
    QuiverMismatch,
    SubdimensionOutOfRange,
)
from .linalg import GF, QQ, PrimeField, RationalField
from .quiver import Quiver, euler_form, positive_roots
from .seeds import mix_seed

Field = RationalField | PrimeField
MatrixT = tuple[tuple, ...]


@dataclass(frozen=True)
class Representation:
    """One matrix per arrow; maps[a] has shape dims[target] x dims[source]."""

    quiver: Quiver
    field: Field
    dims: tuple[int, ...]
    maps: tuple[MatrixT, ...]

    def __post_init__(self):
        if len(self.dims) != self.quiver.n:
            raise SubdimensionOutOfRange("dims length must equal vertex count")
        if len(self.maps) != len(self.quiver.arrows):
            raise SubdimensionOutOfRange("one matrix per arrow required")
        for a, (s, t) in enumerate(self.quiver.arrows):
            m = self.maps[a]
            if len(m) != self.dims[t - 1] or any(len(r) != self.dims[s - 1] for r in m):
                raise SubdimensionOutOfRange(
                    f"matrix for arrow {a} has wrong shape (want {self.dims[t-1]}x{self.dims[s-1]})"
                )

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, d in enumerate(self.dims) if d > 0)

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_dict(),
            "field": "Q" if self.field.p is None else {"p": self.field.p},
            "dims": list(self.dims),
            "maps": [[[_entry_json(x) for x in row] for row in m] for m in self.maps],
        }


def _entry_json(x):
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def _entry_from_json(x):
    if isinstance(x, str):
        num, den = x.split("/")
        return Fraction(int(num), int(den))
    return int(x)


def representation_from_json(data: dict) -> Representation:
    from .quiver import quiver_from_dict

    q = quiver_from_dict(data["quiver"])
    field: Field = QQ if data["field"] == "Q" else GF(int(data["field"]["p"]))
    dims = tuple(int(d) for d in data["dims"])
    maps = tuple(
        tuple(tuple(_entry_from_json(x) for x in row) for row in m) for m in data["maps"]
    )
    return Representation(q, field, dims, maps)


def make_representation(q: Quiver, field: Field, dims: Sequence[int], maps: Iterable[Sequence[Sequence]]) -> Representation:
    frozen = tuple(tuple(tuple(field.convert(x) for x in row) for row in m) for m in maps)
    return Representation(q, field, tuple(int(d) for d in dims), frozen)


def zero_representation(q: Quiver, field: Field = QQ) -> Representation:
    dims = (0,) * q.n
    return Representation(q, field, dims, tuple(() for _ in q.arrows))


def random_representation(q: Quiver, d: Sequence[int], field: Field = QQ, rng_seed: int = 0, bound: int = 10) -> Representation:
    """Uniform entries: integers in [-bound, bound] over Q, all of F_p over a prime field."""
    rng = random.Random(rng_seed)
    dims = tuple(int(x) for x in d)
    if any(x < 0 for x in dims):
        raise SubdimensionOutOfRange("dimension vector must be nonnegative")
    maps = []
    for s, t in q.arrows:
        rows_n, cols_n = dims[t - 1], dims[s - 1]
        if field.p is None:
            m = tuple(tuple(rng.randint(-bound, bound) for _ in range(cols_n)) for _ in range(rows_n))
        else:
            m = tuple(tuple(rng.randrange(field.p) for _ in range(cols_n)) for _ in range(rows_n))
        maps.append(m)
    return Representation(q, field, dims, tuple(maps))


def simple_representation(q: Quiver, i: int, field: Field = QQ) -> Representation:
    dims = tuple(1 if v == i else 0 for v in range(1, q.n + 1))
    maps = []
    for s, t in q.arrows:
        maps.append(tuple(tuple(field.zero for _ in range(dims[s - 1])) for _ in range(dims[t - 1])))
    return Representation(q, field, dims, tuple(maps))


def projective_representation(q: Quiver, i: int, field: Field = QQ) -> Representation:
    """P_i: basis at v is the set of paths i -> v, arrows act by path extension."""
    bases = {v: q.paths(i, v) for v in range(1, q.n + 1)}
    dims = tuple(len(bases[v]) for v in range(1, q.n + 1))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        src, tgt = bases[s], bases[t]
        index = {p: k for k, p in enumerate(tgt)}
        m = [[field.zero] * len(src) for _ in range(len(tgt))]
        for c, p in enumerate(src):
            m[index[p + (a,)]][c] = field.one
        maps.append(tuple(tuple(r) for r in m))
    return Representation(q, field, dims, tuple(maps))


def injective_representation(q: Quiver, i: int, field: Field = QQ) -> Representation:
    """I_i: basis at v is the set of paths v -> i, arrows strip their first step."""
    bases = {v: q.paths(v, i) for v in range(1, q.n + 1)}
    dims = tuple(len(bases[v]) for v in range(1, q.n + 1))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        src, tgt = bases[s], bases[t]
        index = {p: k for k, p in enumerate(tgt)}
        m = [[field.zero] * len(src) for _ in range(len(tgt))]
        for c, p in enumerate(src):
            if p and p[0] == a:
                m[index[p[1:]]][c] = field.one
        maps.append(tuple(tuple(r) for r in m))
    return Representation(q, field, dims, tuple(maps))


def direct_sum(m1: Representation, m2: Representation) -> Representation:
    if m1.quiver != m2.quiver:
        raise QuiverMismatch("direct sum over different quivers")
    if m1.field != m2.field:
        raise FieldMismatch("direct sum over different fields")
    field = m1.field
    dims = tuple(a + b for a, b in zip(m1.dims, m2.dims))
    maps = []
    for a, (s, t) in enumerate(m1.quiver.arrows):
        r1, c1 = m1.dims[t - 1], m1.dims[s - 1]
        r2, c2 = m2.dims[t - 1], m2.dims[s - 1]
        block = []
        for r in range(r1):
            block.append(tuple(m1.maps[a][r]) + (field.zero,) * c2)
        for r in range(r2):
            block.append((field.zero,) * c1 + tuple(m2.maps[a][r]))
        maps.append(tuple(block))
    return Representation(m1.quiver, field, dims, tuple(maps))


def direct_sum_all(parts: Sequence[Representation], q: Quiver, field: Field = QQ) -> Representation:
    acc = zero_representation(q, field)
    for p in parts:
        acc = direct_sum(acc, p)
    return acc


# --- Hom / Ext ---


def _hom_system(m: Representation, n: Representation) -> tuple[list[list], int, list[tuple[int, int, int]]]:
    """Linear system for intertwiners f: M -> N (f_t M(a) = N(a) f_s).

    Unknowns are the entries of the vertexwise maps f_v (shape n.dims[v] x m.dims[v]),
    laid out vertex by vertex, row-major. Returns (rows, #unknowns, layout) where
    layout[v] = (offset, rows_v, cols_v).
    """
    q = m.quiver
    layout = []
    off = 0
    for v in range(q.n):
        r, c = n.dims[v], m.dims[v]
        layout.append((off, r, c))
        off += r * c
    nun = off
    rows: list[list] = []
    for a, (s, t) in enumerate(q.arrows):
        ma = m.maps[a]  # m.dims[t-1] x m.dims[s-1]
        na = n.maps[a]  # n.dims[t-1] x n.dims[s-1]
        off_s, rs, cs = layout[s - 1]
        off_t, rt, ct = layout[t - 1]
        # equation block: f_t · ma - na · f_s = 0, shape n.dims[t-1] x m.dims[s-1]
        for r in range(n.dims[t - 1]):
            for c in range(m.dims[s - 1]):
                row = [0] * nun
                for k in range(ct):  # ct == m.dims[t-1]
                    coeff = ma[k][c]
                    if coeff != 0:
                        row[off_t + r * ct + k] += coeff
                for k in range(rs):  # rs == n.dims[s-1]
                    coeff = na[r][k]
                    if coeff != 0:
                        row[off_s + k * cs + c] -= coeff
                if any(x != 0 for x in row):
                    rows.append(row)
    return rows, nun, layout


def hom_basis(m: Representation, n: Representation) -> list[tuple[MatrixT, ...]]:
    """Basis of Hom(M, N) as tuples of vertexwise matrices."""
    if m.quiver != n.quiver:
        raise QuiverMismatch("Hom over different quivers")
    if m.field != n.field:
        raise FieldMismatch("Hom over different fields")
    field = m.field
    rows, nun, layout = _hom_system(m, n)
    if field.p is not None:
        rows = [[field.convert(x) for x in row] for row in rows]
    kernel = linalg.nullspace(rows, field, ncols=nun)
    out = []
    for vec in kernel:
        comps = []
        for v in range(m.quiver.n):
            off, r, c = layout[v]
            comps.append(tuple(tuple(vec[off + i * c + j] for j in range(c)) for i in range(r)))
        out.append(tuple(comps))
    return out


def hom_dim(m: Representation, n: Representation) -> int:
    if m.quiver != n.quiver:
        raise QuiverMismatch("Hom over different quivers")
    if m.field != n.field:
        raise FieldMismatch("Hom over different fields")
    field = m.field
    rows, nun, _ = _hom_system(m, n)
    if field.p is not None:
        rows = [[field.convert(x) for x in row] for row in rows]
    return nun - linalg.rank(rows, field)


def ext_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1 = dim Hom - <dim M, dim N> (hereditary)."""
    h = hom_dim(m, n)
    val = h - euler_form(m.quiver, m.dims, n.dims)
    if val < 0:
        raise NegativeExt(f"hom={h} below Euler form value (internal inconsistency)")
    return val


def is_isomorphic(m: Representation, n: Representation, rng_seed: int = 7, tries: int = 12) -> bool:
    """Exact iso test: look for an invertible element of Hom(M, N)."""
    if m.quiver != n.quiver or m.field != n.field or m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    basis = hom_basis(m, n)
    if not basis:
        return False
    field = m.field
    rng = random.Random(rng_seed)
    for attempt in range(tries):
        if attempt < len(basis):
            combo = basis[attempt]
            comps = [list(map(list, c)) for c in combo]
        else:
            coeffs = [rng.randint(-5, 5) for _ in basis]
            comps = []
            for v in range(m.quiver.n):
                r, c = n.dims[v], m.dims[v]
                mat = [[field.zero] * c for _ in range(r)]
                for cf, b in zip(coeffs, basis):
                    if cf:
                        for i in range(r):
                            for j in range(c):
                                mat[i][j] = field.add(mat[i][j], field.mul(cf, b[v][i][j]))
                comps.append(mat)
        if all(linalg.is_invertible(comps[v], field) for v in range(m.quiver.n)):
            return True
    return False


# --- Krull-Schmidt via the fitting lemma ---


def _subrep_on_bases(m: Representation, bases: list[list[list]]) -> Representation:
    """The subrepresentation spanned by the given column bases (assumed arrow-stable)."""
    field = m.field
    dims = tuple(len(b[0]) if b else 0 for b in bases)
    maps = []
    for a, (s, t) in enumerate(m.quiver.arrows):
        bs, bt = bases[s - 1], bases[t - 1]
        if dims[s - 1] == 0 or dims[t - 1] == 0:
            maps.append(tuple((field.zero,) * dims[s - 1] for _ in range(dims[t - 1])))
            continue
        image = linalg.mat_mul(list(map(list, m.maps[a])), bs, field)
        x = linalg.solve_columns(bt, image, field)
        if x is None:
            raise DecompositionUncertified("subspace not arrow-stable (internal)")
        maps.append(tuple(tuple(row) for row in x))
    return Representation(m.quiver, field, dims, tuple(maps))


def _columns(mat: Sequence[Sequence], idxs: Sequence[int]) -> list[list]:
    return [[row[j] for j in idxs] for row in mat]


def _fitting_split(m: Representation, phi: Sequence[MatrixT]) -> tuple[Representation, Representation] | None:
    """Split M = ker(phi^N) ⊕ im(phi^N) when both sides are nonzero."""
    field = m.field
    q = m.quiver
    powers = [list(map(list, phi[v])) for v in range(q.n)]
    total = m.total_dim

    def total_rank(mats):
        return sum(linalg.rank(mats[v], field) for v in range(q.n))

    prev = total_rank(powers)
    # square until the rank stabilizes; at most log2(total)+1 steps
    for _ in range(max(1, total.bit_length() + 1)):
        squared = [linalg.mat_mul(powers[v], powers[v], field) for v in range(q.n)]
        r = total_rank(squared)
        if r == prev:
            break
        powers = squared
        prev = r
    psi = powers
    ker_dim = total - prev
    if ker_dim == 0 or prev == 0:
        return None
    ker_bases = []
    im_bases = []
    for v in range(q.n):
        d = m.dims[v]
        if d == 0:
            ker_bases.append([])
            im_bases.append([])
            continue
        kb = linalg.nullspace(psi[v], field, ncols=d)
        ker_bases.append([[kb[j][i] for j in range(len(kb))] for i in range(d)] if kb else [[] for _ in range(d)])
        pivot_cols = linalg.column_space_basis(psi[v], field)
        im_bases.append(_columns(psi[v], pivot_cols))
    ker = _subrep_on_bases(m, ker_bases)
    im = _subrep_on_bases(m, im_bases)
    return ker, im


def _thin_components(m: Representation) -> list[Representation]:
    """Thin case: connected components of the active-arrow support graph are indecomposable."""
    q = m.quiver
    field = m.field
    parent = list(range(q.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    active = []
    for a, (s, t) in enumerate(q.arrows):
        if m.dims[s - 1] == 1 and m.dims[t - 1] == 1 and not field.is_zero(m.maps[a][0][0]):
            active.append(a)
            union(s, t)
    comps: dict[int, list[int]] = {}
    for v in range(1, q.n + 1):
        if m.dims[v - 1] == 1:
            comps.setdefault(find(v), []).append(v)
    out = []
    for verts in comps.values():
        vset = set(verts)
        dims = tuple(1 if v in vset else 0 for v in range(1, q.n + 1))
        maps = []
        for a, (s, t) in enumerate(q.arrows):
            if s in vset and t in vset:
                maps.append(((m.maps[a][0][0],),))
            else:
                maps.append(tuple((field.zero,) * dims[s - 1] for _ in range(dims[t - 1])))
        out.append(Representation(q, field, dims, tuple(maps)))
    return out


def _combine_endos(m: Representation, endos, coeffs) -> list[MatrixT]:
    field = m.field
    phi = []
    for v in range(m.quiver.n):
        d = m.dims[v]
        mat = [[field.zero] * d for _ in range(d)]
        for cf, b in zip(coeffs, endos):
            if cf:
                bv = b[v]
                cfv = field.convert(cf)
                for i in range(d):
                    for j in range(d):
                        if not field.is_zero(bv[i][j]):
                            mat[i][j] = field.add(mat[i][j], field.mul(cfv, bv[i][j]))
        phi.append(tuple(tuple(r) for r in mat))
    return phi


def _decompose_once(m: Representation, rng: random.Random, split_tries: int) -> list[Representation]:
    if m.is_zero():
        return []
    if all(d <= 1 for d in m.dims):
        return _thin_components(m)
    endos = hom_basis(m, m)
    if len(endos) == 1:
        return [m]
    field = m.field

    def candidates():
        # The RREF basis of End(M) carries matrix-unit-like elements (idempotent on
        # isotypic blocks), so single elements split where dense random combos,
        # being generically invertible, never would.
        for k in range(len(endos)):
            cf = [0] * len(endos)
            cf[k] = 1
            yield cf
        lo, hi = (-9, 9) if field.p is None else (0, field.p - 1)
        for _ in range(split_tries):
            cf = [0] * len(endos)
            for _ in range(min(3, len(endos))):
                cf[rng.randrange(len(endos))] = rng.randint(lo, hi) or 1
            yield cf
        for _ in range(split_tries):
            yield [rng.randint(lo, hi) for _ in endos]

    for coeffs in candidates():
        split = _fitting_split(m, _combine_endos(m, endos, coeffs))
        if split is not None:
            ker, im = split
            return _decompose_once(ker, rng, split_tries) + _decompose_once(im, rng, split_tries)
    return [m]  # no splitting endomorphism found: End local as far as the procedure sees


def decompose(m: Representation, rng_seed: int = 0, retries: int = 4, split_tries: int = 8) -> list[Representation]:
    """Indecomposable summands of M, certified by seed-independent dim multisets."""
    first = _decompose_once(m, random.Random(mix_seed(rng_seed, 1)), split_tries)
    sig = sorted(p.dims for p in first)
    for attempt in range(2, retries + 2):
        second = _decompose_once(m, random.Random(mix_seed(rng_seed, attempt)), split_tries)
        if sorted(p.dims for p in second) == sig:
            return first
        first, sig = second, sorted(p.dims for p in second)
    raise DecompositionUncertified(f"summand pattern unstable after {retries} retries")


def indecomposable_for_root(q: Quiver, beta: Sequence[int], bound: int = 10) -> Representation:
    """The unique indecomposable of a Dynkin quiver with dimension vector beta."""
    beta = tuple(int(x) for x in beta)
    if beta not in set(positive_roots(q)):
        raise NotARoot(f"{beta} is not a positive root")
    seed = 1000003
    for b in beta:
        seed = seed * 31 + b
    for s, t in q.arrows:
        seed = seed * 31 + 7 * s + t
    for attempt in range(200):
        cand = random_representation(q, beta, QQ, rng_seed=seed + attempt, bound=bound)
        if hom_dim(cand, cand) == 1:
            return cand
    raise NotARoot(f"failed to realize {beta} as a brick (internal)")


# --- certified generic representations ---


def generic_representation(
    q: Quiver,
    d: Sequence[int],
    rng_seed: int = 0,
    bound: int = 10,
    rounds: int = 24,
    restarts: int = 8,
) -> tuple[Representation, list[Representation]]:
    """A certified generic representative of dimension d plus its indecomposable parts.

    Samples uniformly and checks the Kac certificate on the sample: every summand a
    brick (End = k) and all pairwise Ext^1 zero. Vanishing on a point is generic
    vanishing (semicontinuity), so a passing sample exhibits the generic
    decomposition. A summand X with dim End = m >= 2 is geometrically m conjugate
    summands of dimension (dim X)/m, so its block is split and resampled; this is
    what makes e.g. twice an isotropic Schur root land on a split rational sample.
    """
    d = tuple(int(x) for x in d)
    if any(x < 0 for x in d):
        raise SubdimensionOutOfRange("dimension vector must be nonnegative")
    if all(x == 0 for x in d):
        return zero_representation(q), []
    for restart in range(restarts):
        blocks: list[tuple[int, ...]] = [d]
        for round_no in range(rounds):
            seed0 = mix_seed(rng_seed, restart, round_no)
            try:
                samples = [
                    random_representation(q, b, QQ, rng_seed=mix_seed(seed0, k), bound=bound)
                    for k, b in enumerate(blocks)
                ]
                parts_per_block = [decompose(s, rng_seed=mix_seed(seed0, 99, k)) for k, s in enumerate(samples)]
            except DecompositionUncertified:
                break
            parts = [p for parts_k in parts_per_block for p in parts_k]
            bad = None
            for k, parts_k in enumerate(parts_per_block):
                for x in parts_k:
                    if hom_dim(x, x) != 1:
                        bad = (k, x)
                        break
                if bad:
                    break
            if bad is not None:
                k, x = bad
                m_end = hom_dim(x, x)
                if all(v % m_end == 0 for v in x.dims):
                    sub = tuple(v // m_end for v in x.dims)
                    new_blocks = blocks[:k] + blocks[k + 1 :]
                    new_blocks += [p.dims for p in parts_per_block[k] if p is not x]
                    new_blocks += [sub] * m_end
                    blocks = new_blocks
                    continue
                break  # not an equal-dimension bundle: restart from scratch
            ok = True
            for i in range(len(parts)):
                for j in range(len(parts)):
                    if i != j and ext_dim(parts[i], parts[j]) != 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return direct_sum_all(samples, q, QQ), parts
            break  # cross-part extensions: restart from scratch
    raise GenericityUncertified(f"could not certify a generic representative of {d}")


# --- subspace enumeration over prime fields ---


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=4096)
def _subspaces(p: int, d: int, e: int) -> tuple:
    """All e-dim subspaces of F_p^d as (rows, pivots) with rows in RREF."""
    if e == 0:
        return (((), ()),)
    from itertools import combinations, product

    out = []
    for pivots in combinations(range(d), e):
        free_positions = []
        for r in range(e):
            for c in range(pivots[r] + 1, d):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in product(range(p), repeat=len(free_positions)):
            rows = [[0] * d for _ in range(e)]
            for r in range(e):
                rows[r][pivots[r]] = 1
            for (r, c), val in zip(free_positions, values):
                rows[r][c] = val
            out.append((tuple(tuple(r) for r in rows), tuple(pivots)))
    return tuple(out)


def _reduce_against(vec: list[int], rows: tuple, pivots: tuple, p: int) -> bool:
    """True iff vec lies in the row space described by (rows, pivots)."""
    w = list(vec)
    for r, c in zip(rows, pivots):
        f = w[c] % p
        if f:
            for j in range(c, len(w)):
                w[j] = (w[j] - f * r[j]) % p
    return all(x % p == 0 for x in w)


def count_subreps(m: Representation, e: Sequence[int], cap: int = 5_000_000) -> int:
    """Number of subrepresentations of M with dimension vector e.

    Enumerates echelon-form subspace representatives at the vertices touched by
    an active arrow constraint; vertices with no constraint contribute their
    subspace count (a Gaussian binomial) as a closed-form factor.
    """
    field = m.field
    if field.p is None:
        raise FieldMismatch("count_subreps needs a prime field")
    p = field.p
    e = tuple(int(x) for x in e)
    if len(e) != m.quiver.n or any(x < 0 or x > d for x, d in zip(e, m.dims)):
        raise SubdimensionOutOfRange(f"need 0 <= {e} <= {m.dims}")
    q = m.quiver
    # an arrow constrains only if something maps somewhere it could escape
    active = [
        a
        for a, (s, t) in enumerate(q.arrows)
        if e[s - 1] > 0
        and e[t - 1] < m.dims[t - 1]
        and any(x % p for row in m.maps[a] for x in row)
    ]
    touched = set()
    for a in active:
        touched.add(q.arrows[a][0])
        touched.add(q.arrows[a][1])
    factor = 1
    for v in range(1, q.n + 1):
        if v not in touched:
            factor *= gaussian_binomial(m.dims[v - 1], e[v - 1], p)
    if factor == 0:
        return 0
    cost = 1
    for v in touched:
        cost *= gaussian_binomial(m.dims[v - 1], e[v - 1], p)
    if cost > cap:
        raise CapExceeded(f"enumeration cost {cost} exceeds cap {cap}")
    if cost == 0:
        return 0
    order = [v for v in q.topological_order() if v in touched]
    pos = {v: k for k, v in enumerate(order)}
    checks: dict[int, list[int]] = {v: [] for v in order}
    for a in active:
        s, t = q.arrows[a]
        later = t if pos[t] > pos[s] else s
        checks[later].append(a)
    choices = [_subspaces(p, m.dims[v - 1], e[v - 1]) for v in order]
    chosen: dict[int, tuple] = {}
    count = 0

    def ok(a: int) -> bool:
        s, t = q.arrows[a]
        rows_s, _ = chosen[s]
        rows_t, piv_t = chosen[t]
        mat = m.maps[a]
        dt = m.dims[t - 1]
        for u in rows_s:
            img = [sum(mat[i][j] * u[j] for j in range(len(u))) % p for i in range(dt)]
            if not _reduce_against(img, rows_t, piv_t, p):
                return False
        return True

    def walk(k: int) -> None:
        nonlocal count
        if k == len(order):
            count += 1
            return
        v = order[k]
        for sub in choices[k]:
            chosen[v] = sub
            if all(ok(a) for a in checks[v]):
                walk(k + 1)
        del chosen[v]

    walk(0)
    return count * factor


# --- Euler characteristics via counting + interpolation ---


@dataclass(frozen=True)
class GrassmannianCount:
    e: tuple[int, ...]
    counts: dict[int, int]
    euler: int


def _primes():
    yield 2
    yield 3
    n = 5
    while True:
        for d in (2, 4):
            is_p = True
            k = 3
            while k * k <= n:
                if n % k == 0:
                    is_p = False
                    break
                k += 2
            if is_p and n % 2:
                yield n
            n += d


def reduce_mod(m: Representation, p: int) -> Representation:
    """Reduction of a rational representation mod p (denominators must be units)."""
    if m.field.p is not None:
        raise FieldMismatch("reduce_mod expects a rational representation")
    field = GF(p)
    maps = tuple(
        tuple(tuple(field.convert(x) for x in row) for row in mat) for mat in m.maps
    )
    return Representation(m.quiver, field, m.dims, maps)


def _denominator_lcm(m: Representation) -> int:
    val = 1
    for mat in m.maps:
        for row in mat:
            for x in row:
                if isinstance(x, Fraction):
                    val = lcm(val, x.denominator)
    return val


def _interpolate(points: list[tuple[int, int]]):
    """Lagrange interpolation; returns coefficients (ascending) as Fractions."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                new[t] -= c * xj
                new[t + 1] += c
            basis = new
        scale = Fraction(yi) / denom
        for t, c in enumerate(basis):
            coeffs[t] += scale * c
    return coeffs


def _poly_eval(coeffs, x: int):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def grassmannian_euler(
    m: Representation,
    e: Sequence[int],
    cap: int = 5_000_000,
    max_offset: int = 24,
    end_dim: int | None = None,
) -> GrassmannianCount:
    """chi(Gr_e(M)) for a rational M: count points mod primes, interpolate, verify.

    Fits the degree-<=D integer polynomial on D+1 consecutive pool primes and
    verifies it on the next two; the window slides past primes of bad reduction.
    Primes dividing a denominator are skipped, as are primes where the reduced
    module's endomorphism dimension jumps (End is upper-semicontinuous, so a
    jump is exactly a degenerate reduction with possibly different counts).
    """
    if m.field.p is not None:
        raise FieldMismatch("grassmannian_euler expects a rational representation")
    e = tuple(int(x) for x in e)
    if len(e) != m.quiver.n or any(x < 0 or x > d for x, d in zip(e, m.dims)):
        raise SubdimensionOutOfRange(f"need 0 <= {e} <= {m.dims}")
    deg = sum(ei * (di - ei) for ei, di in zip(e, m.dims))
    bad = _denominator_lcm(m)
    if end_dim is None:
        end_dim = hom_dim(m, m)
    pool: list[tuple[int, Representation]] = []
    gen = _primes()
    counts: dict[int, int] = {}

    def prime_at(k: int) -> int:
        while len(pool) <= k:
            p = next(gen)
            if bad % p != 0:
                mp = reduce_mod(m, p)
                if hom_dim(mp, mp) == end_dim:
                    pool.append((p, mp))
        return pool[k][0]

    def count_at(k: int) -> int:
        prime_at(k)
        p, mp = pool[k]
        if p not in counts:
            counts[p] = count_subreps(mp, e, cap=cap)
        return counts[p]

    need = deg + 1
    for offset in range(max_offset + 1):
        pts = [(prime_at(offset + i), count_at(offset + i)) for i in range(need)]
        coeffs = _interpolate(pts)
        if any(c.denominator != 1 for c in coeffs):
            continue
        # two verification primes always; one more when the window slid, since
        # sliding is only justified by bad reduction at small primes
        extras = 2 if offset == 0 else 3
        good = True
        for extra in range(extras):
            k = offset + need + extra
            if _poly_eval(coeffs, prime_at(k)) != count_at(k):
                good = False
                break
        if good:
            euler = int(_poly_eval(coeffs, 1))
            return GrassmannianCount(e=e, counts=dict(counts), euler=euler)
    raise NotPolynomialCount(
        f"no degree-{deg} integer polynomial matches the counts for e={e} (dims {m.dims})"
    )
