"""Quivers, the Euler form, Coxeter matrix, and positive roots.

Conventions: vertices are 1-based and dense; the Euler matrix is E = I - A with
A[i][j] = #arrows i->j, so <d,e> = d^t E e = sum_i d_i e_i - sum_{a:i->j} d_i e_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadVertexIndex, CycleFound, DimensionMismatch, LoopFound, NotDynkin, TwoCycleFound

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver without loops or 2-cycles."""

    n: int
    arrows: tuple[tuple[int, int], ...]

    def topological_order(self) -> tuple[int, ...]:
        return _topological_order(self.n, self.arrows)

    def paths(self, i: int, j: int) -> list[tuple[int, ...]]:
        """All paths from i to j as tuples of arrow indices, in a canonical DFS order.

        The trivial path at i is the empty tuple (returned when i == j).
        """
        out: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for idx, (s, _) in enumerate(self.arrows):
            out[s].append(idx)
        result: list[tuple[int, ...]] = []

        def walk(v: int, acc: tuple[int, ...]) -> None:
            if v == j:
                result.append(acc)
            for idx in out[v]:
                walk(self.arrows[idx][1], acc + (idx,))

        walk(i, ())
        return result

    def to_dict(self) -> dict:
        return {"n": self.n, "arrows": [list(a) for a in self.arrows]}

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{s} {t}" for s, t in self.arrows]
        return "\n".join(lines) + "\n"

    def key(self) -> str:
        """Deterministic identity string (used for hashing/caching)."""
        return f"{self.n};" + ",".join(f"{s}-{t}" for s, t in self.arrows)


def _topological_order(n: int, arrows: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    indeg = [0] * (n + 1)
    out: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for s, t in arrows:
        indeg[t] += 1
        out[s].append(t)
    ready = sorted(v for v in range(1, n + 1) if indeg[v] == 0)
    order: list[int] = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                # keep the scan deterministic
                k = 0
                while k < len(ready) and ready[k] < w:
                    k += 1
                ready.insert(k, w)
    if len(order) != n:
        raise CycleFound(f"quiver contains a directed cycle among {sorted(set(range(1, n + 1)) - set(order))}")
    return tuple(order)


def validate_quiver(n: int, arrows: Iterable[Sequence[int]]) -> Quiver:
    """Validate raw data into a Quiver; raises LoopFound/TwoCycleFound/CycleFound/BadVertexIndex."""
    if not isinstance(n, int) or n < 1:
        raise BadVertexIndex(f"vertex count must be a positive integer, got {n!r}")
    arrow_list: list[tuple[int, int]] = []
    for a in arrows:
        s, t = int(a[0]), int(a[1])
        if not (1 <= s <= n) or not (1 <= t <= n):
            raise BadVertexIndex(f"arrow ({s},{t}) out of range 1..{n}")
        if s == t:
            raise LoopFound(f"loop at vertex {s}")
        arrow_list.append((s, t))
    pairs = {(s, t) for s, t in arrow_list}
    for s, t in arrow_list:
        if (t, s) in pairs:
            raise TwoCycleFound(f"2-cycle between {s} and {t}")
    _topological_order(n, arrow_list)
    return Quiver(n=n, arrows=tuple(arrow_list))


def quiver_from_dict(data: dict) -> Quiver:
    return validate_quiver(int(data["n"]), data["arrows"])


def quiver_from_text(text: str) -> Quiver:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise BadVertexIndex("empty quiver description")
    n = int(lines[0])
    arrows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise BadVertexIndex(f"bad arrow line: {ln!r}")
        arrows.append((int(parts[0]), int(parts[1])))
    return validate_quiver(n, arrows)


# --- integer matrix helpers (n is tiny; exactness is what matters) ---


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rb = len(b)
    cb = len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(rb)) for j in range(cb)) for i in range(len(a))
    )


def _mat_vec(a: IntMatrix, v: Sequence[int]) -> IntVector:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def _transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _int_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant ±1."""
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise CycleFound("Euler matrix not invertible (internal)")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = tuple(tuple(int(m[i][n + j]) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            if m[i][n + j].denominator != 1:
                raise CycleFound("Euler matrix inverse not integral (internal)")
    return out


@dataclass(frozen=True)
class EulerData:
    """Euler matrix E, Coxeter matrix C = -E^t E^{-1}, and the exact inverses of E, E^t."""

    E: IntMatrix
    C: IntMatrix
    Einv: IntMatrix
    Etinv: IntMatrix


def euler_matrix(q: Quiver) -> EulerData:
    n = q.n
    a = [[0] * n for _ in range(n)]
    for s, t in q.arrows:
        a[s - 1][t - 1] += 1
    e = tuple(tuple((1 if i == j else 0) - a[i][j] for j in range(n)) for i in range(n))
    einv = _int_inverse(e)
    et = _transpose(e)
    etinv = _transpose(einv)
    c = tuple(tuple(-x for x in row) for row in _mat_mul(et, einv))
    return EulerData(E=e, C=c, Einv=einv, Etinv=etinv)


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d,e> = dim Hom - dim Ext^1 on dimension vectors."""
    if len(d) != q.n or len(e) != q.n:
        raise DimensionMismatch(f"expected vectors of length {q.n}")
    val = sum(d[i] * e[i] for i in range(q.n))
    for s, t in q.arrows:
        val -= d[s - 1] * e[t - 1]
    return val


def antisym_form_simple(q: Quiver, i: int, e: Sequence[int]) -> int:
    """<alpha_i, e> - <e, alpha_i> for the i-th unit vector."""
    if not (1 <= i <= q.n):
        raise DimensionMismatch(f"vertex {i} out of range 1..{q.n}")
    if len(e) != q.n:
        raise DimensionMismatch(f"expected vector of length {q.n}")
    unit = tuple(1 if k == i - 1 else 0 for k in range(q.n))
    return euler_form(q, unit, e) - euler_form(q, e, unit)


def _symmetrized(q: Quiver) -> IntMatrix:
    n = q.n
    s = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in q.arrows:
        s[a - 1][b - 1] -= 1
        s[b - 1][a - 1] -= 1
    return tuple(tuple(row) for row in s)


def is_dynkin(q: Quiver) -> bool:
    """True iff the symmetrized Euler form is positive definite (ADE unions)."""
    s = _symmetrized(q)
    # leading principal minors, exact
    for k in range(1, q.n + 1):
        m = [[Fraction(s[i][j]) for j in range(k)] for i in range(k)]
        det = Fraction(1)
        for col in range(k):
            piv = next((r for r in range(col, k) if m[r][col] != 0), None)
            if piv is None:
                return False
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det *= m[col][col]
            for r in range(col + 1, k):
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        if det <= 0:
            return False
    return True


def positive_roots(q: Quiver) -> tuple[IntVector, ...]:
    """All positive roots of a Dynkin quiver, in lexicographic order.

    Computed as the closure of the unit vectors under the simple reflections of
    the symmetrized form.
    """
    if not is_dynkin(q):
        raise NotDynkin("underlying graph is not a simply-laced Dynkin diagram")
    n = q.n
    s = _symmetrized(q)
    units = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen: set[IntVector] = set(units)
    frontier = list(units)
    while frontier:
        v = frontier.pop()
        for i in range(n):
            pairing = sum(s[i][k] * v[k] for k in range(n))
            w = tuple(v[k] - (pairing if k == i else 0) for k in range(n))
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    pos = sorted(v for v in seen if all(x >= 0 for x in v) and any(x > 0 for x in v))
    return tuple(pos)
