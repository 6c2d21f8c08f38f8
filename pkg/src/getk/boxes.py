"""Exact convex-cone machinery for no-signalling box pairs.

Conditional-probability tables are kept as exact rationals throughout: no
floating point enters this module.  The joint table of a box pair is laid
out as the block matrix whose (k, l) block holds the outcome probabilities
for Alice's measurement k and Bob's measurement l, stored row-major with
row index ma*k + i and column index mb*l + j.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

F0 = Fraction(0)
F1 = Fraction(1)

ENUMERATION_CAP = 6  # max n_inputs * n_outputs per side for vertex enumeration


class InfeasibleError(ValueError):
    """The table violates the cone constraints."""


class SignallingError(InfeasibleError):
    """The table's marginals depend on the remote measurement choice."""


def _coerce(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("box tables are exact; pass Fraction, int, or string, not float")
    return Fraction(value)


@dataclass(frozen=True)
class BoxState:
    """A single box: N alternative measurements with M outcomes each.

    ``probs`` is the flat table (p[0|0], ..., p[M-1|0], p[0|1], ...), i.e.
    outcomes grouped by measurement.
    """

    n_inputs: int
    n_outputs: int
    probs: tuple

    def __post_init__(self):
        probs = tuple(_coerce(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != self.n_inputs * self.n_outputs:
            raise ValueError(f"expected {self.n_inputs * self.n_outputs} entries, got {len(probs)}")
        if any(p < 0 for p in probs):
            raise InfeasibleError("negative probability entry")
        for k in range(self.n_inputs):
            block = probs[k * self.n_outputs:(k + 1) * self.n_outputs]
            if sum(block) != 1:
                raise InfeasibleError(f"outcomes of measurement {k} sum to {sum(block)}, not 1")

    def prob(self, o: int, k: int) -> Fraction:
        return self.probs[k * self.n_outputs + o]

    def is_extremal(self) -> bool:
        """Vertices of the box polytope are exactly the deterministic tables."""
        return all(p == 0 or p == 1 for p in self.probs)

    def tensor(self, other: "BoxState") -> "BipartiteBoxState":
        """Product table p[ij|kl] = p_A[i|k] p_B[j|l]."""
        shape = (self.n_inputs, self.n_outputs, other.n_inputs, other.n_outputs)
        cols = other.n_inputs * other.n_outputs
        probs = [F0] * (self.n_inputs * self.n_outputs * cols)
        for k in range(self.n_inputs):
            for i in range(self.n_outputs):
                for l in range(other.n_inputs):
                    for j in range(other.n_outputs):
                        r = self.n_outputs * k + i
                        c = other.n_outputs * l + j
                        probs[r * cols + c] = self.prob(i, k) * other.prob(j, l)
        return BipartiteBoxState(shape=shape, probs=tuple(probs))


def deterministic_boxes(n_inputs: int, n_outputs: int) -> list:
    """All M^N deterministic single-box tables, in lexicographic order."""
    out = []
    for assignment in itertools.product(range(n_outputs), repeat=n_inputs):
        probs = [F0] * (n_inputs * n_outputs)
        for k, o in enumerate(assignment):
            probs[k * n_outputs + o] = F1
        out.append(BoxState(n_inputs, n_outputs, tuple(probs)))
    return out


@dataclass(frozen=True)
class BipartiteBoxState:
    """Joint conditional-probability table of a pair of boxes."""

    shape: tuple  # (na, ma, nb, mb)
    probs: tuple

    def __post_init__(self):
        na, ma, nb, mb = self.shape
        probs = tuple(_coerce(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != na * ma * nb * mb:
            raise ValueError(f"expected {na * ma * nb * mb} entries, got {len(probs)}")
        if any(p < 0 for p in probs):
            raise InfeasibleError("negative probability entry")
        for k in range(na):
            for l in range(nb):
                if self.block_sum(k, l) != 1:
                    raise InfeasibleError(f"block ({k},{l}) sums to {self.block_sum(k, l)}, not 1")

    @property
    def n_cols(self) -> int:
        return self.shape[2] * self.shape[3]

    def prob(self, i: int, j: int, k: int, l: int) -> Fraction:
        na, ma, nb, mb = self.shape
        return self.probs[(ma * k + i) * (nb * mb) + (mb * l + j)]

    def block_sum(self, k: int, l: int) -> Fraction:
        na, ma, nb, mb = self.shape
        return sum(self.prob(i, j, k, l) for i in range(ma) for j in range(mb))

    def is_no_signalling(self) -> bool:
        try:
            marginals(self)
        except SignallingError:
            return False
        return True

    def to_json_dict(self) -> dict:
        na, ma, nb, mb = self.shape
        return {
            "n_inputs": [na, nb],
            "n_outputs": [ma, mb],
            "p": [[p.numerator, p.denominator] for p in self.probs],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BipartiteBoxState":
        na, nb = (int(v) for v in obj["n_inputs"])
        ma, mb = (int(v) for v in obj["n_outputs"])
        probs = tuple(Fraction(int(num), int(den)) for num, den in obj["p"])
        return cls(shape=(na, ma, nb, mb), probs=probs)

    @classmethod
    def from_matrix(cls, rows, shape=(2, 2, 2, 2)) -> "BipartiteBoxState":
        """Build from the nested block-matrix layout (rows of the joint table)."""
        flat = tuple(_coerce(v) for row in rows for v in row)
        return cls(shape=tuple(shape), probs=flat)


def marginals(state: BipartiteBoxState):
    """Exact marginal tables (Alice, Bob); the reduction map of this setting.

    Alice's table collects row sums within her blocks, Bob's the column
    sums; no-signalling makes them independent of the remote input, and a
    violation raises :class:`SignallingError`.
    """
    na, ma, nb, mb = state.shape
    alice = None
    for l in range(nb):
        cur = tuple(sum(state.prob(i, j, k, l) for j in range(mb))
                    for k in range(na) for i in range(ma))
        if alice is None:
            alice = cur
        elif cur != alice:
            raise SignallingError(f"Alice's marginal depends on Bob's input (l={l})")
    bob = None
    for k in range(na):
        cur = tuple(sum(state.prob(i, j, k, l) for i in range(ma))
                    for l in range(nb) for j in range(mb))
        if bob is None:
            bob = cur
        elif cur != bob:
            raise SignallingError(f"Bob's marginal depends on Alice's input (k={k})")
    return (BoxState(na, ma, alice), BoxState(nb, mb, bob))


@dataclass(frozen=True)
class PolyhedralCone:
    """H-representation of the unnormalized no-signalling cone.

    Coordinates are the joint-table entries; the cone is cut out by
    nonnegativity together with the homogeneous equalities (equal block
    sums and no-signalling), and ``unit`` is the functional whose level set
    1 carves out the normalized base polytope.
    """

    shape: tuple
    ambient: int
    equalities: tuple  # rows a with a . x = 0
    unit: tuple        # lambda with lambda . x = 1 on the base

    def index(self, i, j, k, l) -> int:
        na, ma, nb, mb = self.shape
        return (ma * k + i) * (nb * mb) + (mb * l + j)


def no_signalling_polytope(na: int, ma: int, nb: int | None = None,
                           mb: int | None = None) -> PolyhedralCone:
    """Cone of unnormalized no-signalling tables for an (na, ma) x (nb, mb) pair."""
    nb = na if nb is None else nb
    mb = ma if mb is None else mb
    if min(na, ma, nb, mb) < 1:
        raise ValueError("need at least one input and one output per side")
    ambient = na * ma * nb * mb
    if ambient ** 2 > 10_000:
        raise ValueError(f"table size {ambient} too large")
    shape = (na, ma, nb, mb)

    def idx(i, j, k, l):
        return (ma * k + i) * (nb * mb) + (mb * l + j)

    eqs = []
    # all block sums equal (normalization, in homogeneous cone form)
    for k in range(na):
        for l in range(nb):
            if (k, l) == (0, 0):
                continue
            row = [F0] * ambient
            for i in range(ma):
                for j in range(mb):
                    row[idx(i, j, k, l)] += F1
                    row[idx(i, j, 0, 0)] -= F1
            eqs.append(tuple(row))
    # Bob's column sums independent of Alice's input
    for l in range(nb):
        for j in range(mb):
            for k in range(1, na):
                row = [F0] * ambient
                for i in range(ma):
                    row[idx(i, j, k, l)] += F1
                    row[idx(i, j, 0, l)] -= F1
                eqs.append(tuple(row))
    # Alice's row sums independent of Bob's input
    for k in range(na):
        for i in range(ma):
            for l in range(1, nb):
                row = [F0] * ambient
                for j in range(mb):
                    row[idx(i, j, k, l)] += F1
                    row[idx(i, j, k, 0)] -= F1
                eqs.append(tuple(row))
    unit = [F0] * ambient
    for i in range(ma):
        for j in range(mb):
            unit[idx(i, j, 0, 0)] = F1
    return PolyhedralCone(shape=shape, ambient=ambient,
                          equalities=tuple(eqs), unit=tuple(unit))


# ---------------------------------------------------------------------------
# exact linear algebra over Fraction


def _rref(rows):
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def _rank(rows) -> int:
    if not rows:
        return 0
    _, pivots = _rref(rows)
    return len(pivots)


def _affine_solution(aug_rows, ncols):
    """Particular solution and nullspace basis of [A | b] over the rationals."""
    m, pivots = _rref(aug_rows)
    if ncols in pivots:
        raise InfeasibleError("equality system is inconsistent")
    x0 = [F0] * ncols
    for r, c in enumerate(pivots):
        x0[c] = m[r][ncols]
    free = [c for c in range(ncols) if c not in set(pivots)]
    null = []
    for f in free:
        v = [F0] * ncols
        v[f] = F1
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        null.append(v)
    return x0, null


def affine_dimension(cone: PolyhedralCone) -> int:
    """Dimension of the normalized base polytope's affine hull."""
    rows = [list(e) for e in cone.equalities] + [list(cone.unit)]
    return cone.ambient - _rank(rows)


def _integerize(frac_row):
    mult = lcm(*(f.denominator for f in frac_row)) if frac_row else 1
    ints = [int(f * mult) for f in frac_row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def enumerate_vertices(cone: PolyhedralCone) -> list:
    """All vertices of the normalized polytope, exactly.

    Brute force over candidate tight sets: pick affine-dimension many
    linearly independent nonnegativity constraints (by incremental integer
    elimination, pruning dependent prefixes), solve the resulting square
    system, and keep feasible solutions.  Any feasible point pinned by an
    independent tight set of full rank is a vertex, so no separate rank
    check is needed; duplicates from larger tight sets are merged exactly.
    """
    na, ma, nb, mb = cone.shape
    if na * ma > ENUMERATION_CAP or nb * mb > ENUMERATION_CAP:
        raise ValueError(f"enumeration capped at {ENUMERATION_CAP} input*output per side")
    ambient = cone.ambient
    aug = [list(e) + [F0] for e in cone.equalities] + [list(cone.unit) + [F1]]
    x0, null = _affine_solution(aug, ambient)
    p = len(null)
    base_rows = [_integerize([null[q][r] for q in range(p)] + [x0[r]])
                 for r in range(ambient)]
    found = {}

    def solve_and_record(pivot_list):
        t = [F0] * p
        for col, row in reversed(pivot_list):
            acc = Fraction(row[p])
            for jj in range(p):
                if jj != col and row[jj]:
                    acc += row[jj] * t[jj]
            t[col] = -acc / row[col]
        x = []
        for r in range(ambient):
            val = x0[r]
            for q in range(p):
                if t[q]:
                    val += null[q][r] * t[q]
            if val < 0:
                return
            x.append(val)
        found[tuple(x)] = None

    def recurse(rows, pivot_list):
        need = p - len(pivot_list)
        if need == 0:
            solve_and_record(pivot_list)
            return
        for s in range(len(rows) - need + 1):
            row = rows[s]
            col = next((j for j in range(p) if row[j]), None)
            if col is None:
                continue
            rc = row[col]
            tail = []
            for r2 in rows[s + 1:]:
                if r2[col]:
                    nr = [rc * a - r2[col] * b for a, b in zip(r2, row)]
                    g = 0
                    for v in nr:
                        g = gcd(g, abs(v))
                    if g > 1:
                        nr = [v // g for v in nr]
                    tail.append(nr)
                else:
                    tail.append(r2)
            recurse(tail, pivot_list + [(col, row)])

    recurse(base_rows, [])
    states = [BipartiteBoxState(shape=cone.shape, probs=probs) for probs in sorted(found)]
    return states


def _check_membership(state: BipartiteBoxState, cone: PolyhedralCone):
    if state.shape != cone.shape:
        raise ValueError(f"state shape {state.shape} does not match cone shape {cone.shape}")
    marginals(state)  # raises SignallingError on violation


def is_extremal(state: BipartiteBoxState, cone: PolyhedralCone | None = None) -> bool:
    """Exact vertex test: tight constraints span the whole ambient space."""
    cone = cone or no_signalling_polytope(*state.shape)
    _check_membership(state, cone)
    rows = [list(e) for e in cone.equalities] + [list(cone.unit)]
    for r, val in enumerate(state.probs):
        if val == 0:
            row = [F0] * cone.ambient
            row[r] = F1
            rows.append(row)
    return _rank(rows) == cone.ambient


class VertexClass(Enum):
    PRODUCT = "product"
    ENTANGLED = "entangled"


def classify_extremal(state: BipartiteBoxState,
                      cone: PolyhedralCone | None = None) -> VertexClass:
    """Split vertices into products and entangled extremal states.

    A vertex is a product exactly when both marginals are vertices of their
    single-box polytopes; in that case the joint table must factorize
    exactly, which is verified.
    """
    cone = cone or no_signalling_polytope(*state.shape)
    if not is_extremal(state, cone):
        raise ValueError("classification is defined for extremal states only")
    a, b = marginals(state)
    if a.is_extremal() and b.is_extremal():
        if a.tensor(b).probs != state.probs:
            raise AssertionError("deterministic marginals without exact factorization")
        return VertexClass.PRODUCT
    return VertexClass.ENTANGLED


@dataclass(frozen=True)
class Relabeling:
    """One side's relabeling: an input permutation plus per-input output permutations.

    ``inputs[k]`` is the old input measured in the new slot k and
    ``outputs[k]`` maps new outcome labels of slot k to old outcome labels.
    """

    inputs: tuple
    outputs: tuple

    def __post_init__(self):
        n = len(self.inputs)
        if sorted(self.inputs) != list(range(n)):
            raise ValueError(f"inputs {self.inputs} is not a permutation")
        if len(self.outputs) != n:
            raise ValueError("need one output permutation per input")
        for perm in self.outputs:
            if sorted(perm) != list(range(len(perm))):
                raise ValueError(f"outputs {perm} is not a permutation")

    @classmethod
    def identity(cls, n_inputs: int, n_outputs: int) -> "Relabeling":
        return cls(tuple(range(n_inputs)), tuple(tuple(range(n_outputs)) for _ in range(n_inputs)))


def all_relabelings(n_inputs: int, n_outputs: int):
    """The full relabeling group of one side (size N! * (M!)^N)."""
    out_perms = list(itertools.permutations(range(n_outputs)))
    for in_perm in itertools.permutations(range(n_inputs)):
        for outs in itertools.product(out_perms, repeat=n_inputs):
            yield Relabeling(tuple(in_perm), tuple(outs))


def local_relabeling(state: BipartiteBoxState, alice: Relabeling,
                     bob: Relabeling) -> BipartiteBoxState:
    """Relabel measurements and outcomes on each side independently."""
    na, ma, nb, mb = state.shape
    if len(alice.inputs) != na or any(len(p) != ma for p in alice.outputs):
        raise ValueError("Alice's relabeling does not match her box shape")
    if len(bob.inputs) != nb or any(len(p) != mb for p in bob.outputs):
        raise ValueError("Bob's relabeling does not match his box shape")
    cols = nb * mb
    probs = [F0] * len(state.probs)
    for k in range(na):
        for i in range(ma):
            for l in range(nb):
                for j in range(mb):
                    val = state.prob(alice.outputs[k][i], bob.outputs[l][j],
                                     alice.inputs[k], bob.inputs[l])
                    probs[(ma * k + i) * cols + (mb * l + j)] = val
    return BipartiteBoxState(shape=state.shape, probs=tuple(probs))


def relabeling_orbit(state: BipartiteBoxState) -> list:
    """Orbit of a table under all local relabelings, sorted canonically."""
    na, ma, nb, mb = state.shape
    seen = {}
    for ra in all_relabelings(na, ma):
        for rb in all_relabelings(nb, mb):
            s2 = local_relabeling(state, ra, rb)
            seen[s2.probs] = s2
    return [seen[k] for k in sorted(seen)]


def _phase1_feasible(columns, target) -> bool:
    """Does target = sum_c mu_c columns[c] admit a solution with mu >= 0?

    Phase-1 simplex with Bland's rule over exact rationals; all target
    entries must be nonnegative (probability tables are).
    """
    m = len(target)
    n = len(columns)
    tab = []
    for r in range(m):
        row = [columns[c][r] for c in range(n)]
        row += [F1 if rr == r else F0 for rr in range(m)]
        row.append(target[r])
        tab.append(row)
    basis = list(range(n, n + m))
    total = n + m
    while True:
        entering = None
        for j in range(total):
            cost = F1 if j >= n else F0
            red = cost - sum(tab[r][j] for r in range(m) if basis[r] >= n)
            if red < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        best = None
        for r in range(m):
            a = tab[r][entering]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            raise ArithmeticError("phase-1 simplex became unbounded")
        pv = tab[leave][entering]
        tab[leave] = [x / pv for x in tab[leave]]
        for r in range(m):
            if r != leave and tab[r][entering] != 0:
                f = tab[r][entering]
                tab[r] = [a - f * b for a, b in zip(tab[r], tab[leave])]
        basis[leave] = entering
    residual = sum(tab[r][-1] for r in range(m) if basis[r] >= n)
    return residual == 0


def in_convex_hull(state: BipartiteBoxState, vertices) -> bool:
    """Exact membership of a table in the convex hull of given tables.

    This is the membership primitive for any tensor product given by a
    user-supplied vertex list (anything between the separable and the
    maximal product is a legal choice of hull generators).
    """
    vertices = list(vertices)
    if any(v.shape != state.shape for v in vertices):
        raise ValueError("hull vertices must share the state's shape")
    if not vertices:
        return False
    return _phase1_feasible([v.probs for v in vertices], state.probs)


def in_separable_tensor_product(state: BipartiteBoxState) -> bool:
    """Exact membership test for the convex hull of product vertices."""
    na, ma, nb, mb = state.shape
    marginals(state)  # separability is asked of no-signalling states only
    products = [a.tensor(b)
                for a in deterministic_boxes(na, ma)
                for b in deterministic_boxes(nb, mb)]
    return in_convex_hull(state, products)


def is_generalized_unentangled_box(state: BipartiteBoxState,
                                   cone: PolyhedralCone | None = None) -> bool:
    """Unentanglement of a box pair relative to the marginal reduction.

    Extremal states are unentangled exactly when both marginals are
    extremal; non-extremal states exactly when they lie in the separable
    tensor product.
    """
    cone = cone or no_signalling_polytope(*state.shape)
    if is_extremal(state, cone):
        a, b = marginals(state)
        return a.is_extremal() and b.is_extremal()
    return in_separable_tensor_product(state)


def canonical_product_vertex() -> BipartiteBoxState:
    """The product vertex with outcome 0 certain on every measurement."""
    det = deterministic_boxes(2, 2)[0]
    return det.tensor(det)


def canonical_entangled_vertex() -> BipartiteBoxState:
    """The correlated-box vertex: outcomes agree unless both inputs are 1."""
    half = Fraction(1, 2)
    probs = []
    for k in range(2):
        for i in range(2):
            for l in range(2):
                for j in range(2):
                    probs.append(half if (i ^ j) == (k & l) else F0)
    return BipartiteBoxState(shape=(2, 2, 2, 2), probs=tuple(probs))
