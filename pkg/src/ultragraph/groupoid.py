"""Boundary-path groupoid machinery, symbolically.

On a finite sink-free ultragraph the boundary consists of the infinite
paths alone, represented here by lasso paths.  Groupoid elements are
triples (left tail, lag, right tail) carrying a derived witness
(x, y, mu) with left = x.mu, right = y.mu and matching ranges; bisections
are the basic open slices indexed by semigroup pairs; unit-space cylinder
sets get an exact normal form by refinement to a fixed depth, which makes
the Cuntz-Krieger relations decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import (
    Edge,
    GraphStructureError,
    LatticeG0,
    Ultragraph,
    VSet,
    edge_adjacency,
    emitted_edges,
    format_set,
    is_infinite_emitter,
    is_ultraset,
    reaches,
    require_no_sinks,
    set_key,
)
from .paths import (
    LassoPath,
    Ultrapath,
    concat,
    concat_lasso,
    enumerate_lassos,
    enumerate_paths,
    initial_segment,
    lasso_source,
    shift_n,
    strip_lasso,
    unroll,
    vertex_path,
)
from .semigroup import (
    OMEGA,
    SGElement,
    generate_elements,
    idempotent,
    idempotent_leq,
    is_idempotent,
    product,
    star,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: Tuple[str, ...] = ()


@dataclass(frozen=True)
class CheckReport:
    entries: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> Tuple[CheckResult, ...]:
        return tuple(e for e in self.entries if not e.passed)


@dataclass(frozen=True)
class BoundaryPath:
    """A point of the boundary: an infinite path, or one of the finite
    ultrapaths whose range is an ultraset emitting infinitely many edges.
    The finite kind cannot occur over a finite ultragraph, so constructing
    one is an error rather than a value.
    """

    path: Optional[Ultrapath] = None
    ray: Optional[LassoPath] = None

    def __post_init__(self):
        if (self.path is None) == (self.ray is None):
            raise ValueError("exactly one of path and ray must be set")

    @classmethod
    def from_lasso(cls, x: LassoPath) -> "BoundaryPath":
        return cls(ray=x)

    @classmethod
    def from_finite(
        cls, g: Ultragraph, lat: LatticeG0, x: Ultrapath
    ) -> "BoundaryPath":
        if is_ultraset(g, lat, x.terminal) and is_infinite_emitter(g, x.terminal):
            return cls(path=x)
        raise GraphStructureError(
            "finite boundary points need an infinite-emitter ultraset range; "
            "no finite ultragraph has one"
        )

    def __str__(self) -> str:
        return str(self.path if self.path is not None else self.ray)


def _as_ray(b) -> LassoPath:
    if isinstance(b, LassoPath):
        return b
    if b.ray is None:
        raise ValueError("finite boundary points do not occur here")
    return b.ray


def compute_Y_infinity(
    g: Ultragraph, lat: LatticeG0, max_len: int = 2
) -> Tuple[Ultrapath, ...]:
    """Ultrapaths up to max_len whose range is an infinite-emitter ultraset.

    Empty over every finite ultragraph, which is asserted: the boundary
    then consists of the infinite paths alone.
    """
    hits = tuple(
        y
        for y in enumerate_paths(g, lat, max_len)
        if is_ultraset(g, lat, y.terminal) and is_infinite_emitter(g, y.terminal)
    )
    assert not hits, "a finite ultragraph produced an infinite emitter"
    return hits


@dataclass(frozen=True)
class GroupoidElement:
    """Triple (left, lag, right) of boundary paths sharing a tail.

    The witness (x, y, mu) with left = x.mu, right = y.mu, matching ranges
    and lag = length(x) - length(y) is derived data: it is excluded from
    equality, and the factory always picks the witness with the shortest x.
    """

    left: BoundaryPath
    lag: int
    right: BoundaryPath
    witness: Tuple[Ultrapath, Ultrapath, LassoPath] = field(compare=False, repr=False)

    def __str__(self) -> str:
        return f"({self.left}, {self.lag:+d}, {self.right})"


def groupoid_element(g: Ultragraph, left, lag: int, right) -> GroupoidElement:
    """Validated construction: hunts for the least strip depth n with
    shift^n(left) = shift^(n-lag)(right) and builds the witness there.
    Raises ValueError when the rays never merge at this lag."""
    l = _as_ray(left)
    r = _as_ray(right)
    lo = max(lag, 0)
    settle = max(len(l.prefix), len(r.prefix) + lag, lo)
    hi = settle + math.lcm(len(l.cycle), len(r.cycle))
    for n in range(lo, hi + 1):
        if shift_n(l, n) == shift_n(r, n - lag):
            mu = shift_n(l, n)
            x_word = unroll(l, n)
            y_word = unroll(r, n - lag)
            if x_word and y_word:
                T = g.range[x_word[-1]] & g.range[y_word[-1]]
            else:
                T = frozenset({lasso_source(g, mu)})
            witness = (Ultrapath(x_word, T), Ultrapath(y_word, T), mu)
            return GroupoidElement(
                left=BoundaryPath.from_lasso(l),
                lag=lag,
                right=BoundaryPath.from_lasso(r),
                witness=witness,
            )
    raise ValueError(f"no shared tail: {l} and {r} at lag {lag}")


def compose(g: Ultragraph, a: GroupoidElement, b: GroupoidElement) -> Optional[GroupoidElement]:
    """Defined exactly when a's right point equals b's left point; lags add."""
    if a.right != b.left:
        return None
    return groupoid_element(g, a.left, a.lag + b.lag, b.right)


def inverse(a: GroupoidElement) -> GroupoidElement:
    x, y, mu = a.witness
    return GroupoidElement(left=a.right, lag=-a.lag, right=a.left, witness=(y, x, mu))


def unit_at(g: Ultragraph, point) -> GroupoidElement:
    return groupoid_element(g, point, 0, point)


@dataclass(frozen=True)
class Bisection:
    """Basic slice indexed by a semigroup pair (x, y): all elements
    (x.mu, length(x) - length(y), y.mu).  The zero indexes the empty set."""

    generator: SGElement

    @property
    def is_empty(self) -> bool:
        return self.generator.is_omega


EMPTY_BISECTION = Bisection(OMEGA)


def bisection_member(g: Ultragraph, b: Bisection, a: GroupoidElement) -> bool:
    """Membership needs one shared tail mu stripping both coordinates."""
    if b.is_empty:
        return False
    x, y = b.generator.left, b.generator.right
    if a.lag != x.length - y.length:
        return False
    mu1 = strip_lasso(g, _as_ray(a.left), x)
    if mu1 is None:
        return False
    mu2 = strip_lasso(g, _as_ray(a.right), y)
    return mu2 is not None and mu1 == mu2


def bisection_product(g: Ultragraph, b1: Bisection, b2: Bisection) -> Bisection:
    return Bisection(product(g, b1.generator, b2.generator))


def bisection_star(b: Bisection) -> Bisection:
    return Bisection(star(b.generator))


@dataclass(frozen=True)
class CylinderSet:
    """D(base) minus the one-edge extensions in K and the terminal
    shrinkings by the sets in Q."""

    base: Ultrapath
    excluded_edges: FrozenSet[Edge] = frozenset()
    excluded_sets: FrozenSet[VSet] = frozenset()


def make_cylinder(
    g: Ultragraph,
    lat: LatticeG0,
    base: Ultrapath,
    excluded_edges: Iterable[Edge] = (),
    excluded_sets: Iterable[VSet] = (),
) -> CylinderSet:
    K = frozenset(excluded_edges)
    Q = frozenset(frozenset(s) for s in excluded_sets)
    allowed = emitted_edges(g, base.terminal)
    for e in K:
        if e not in allowed:
            raise ValueError(f"excluded edge '{e}' is not emitted by the base range")
    for C in Q:
        if C not in lat:
            raise ValueError(f"excluded set {format_set(C)} is not a lattice set")
        if base.terminal <= C:
            raise ValueError(
                f"excluded set {format_set(C)} contains the base range"
            )
    return CylinderSet(base=base, excluded_edges=K, excluded_sets=Q)


def cylinder_member(g: Ultragraph, x, cyl: CylinderSet) -> bool:
    ray = _as_ray(x)
    if strip_lasso(g, ray, cyl.base) is None:
        return False
    for e in sorted(cyl.excluded_edges):
        ext = Ultrapath(cyl.base.word + (e,), g.range[e])
        if strip_lasso(g, ray, ext) is not None:
            return False
    for C in sorted(cyl.excluded_sets, key=set_key):
        t = cyl.base.terminal & C
        if t and strip_lasso(g, ray, Ultrapath(cyl.base.word, t)) is not None:
            return False
    return True


def _grow(adj, seeds: Iterable[Tuple[Edge, ...]], steps: int) -> List[Tuple[Edge, ...]]:
    layer = list(seeds)
    for _ in range(steps):
        layer = [w + (f,) for w in layer for f in adj[w[-1]]]
    return layer


def _pure_words(g, adj, sources: VSet, depth: int) -> List[Tuple[Edge, ...]]:
    """Depth-d edge words starting at a vertex of the given set."""
    seeds = [(e,) for e in g.edges_sorted() if g.source[e] in sources]
    return _grow(adj, seeds, depth - 1)


def _cylinder_words(g, adj, cyl: CylinderSet, depth: int) -> List[Tuple[Edge, ...]]:
    base = cyl.base
    n = base.length
    if depth < 1 or depth < n:
        raise ValueError("refinement depth must cover every base")
    exclusions = cyl.excluded_edges or cyl.excluded_sets
    if depth == n:
        maximal = n >= 1 and base.terminal == g.range[base.word[-1]]
        if exclusions or not maximal:
            raise ValueError(
                "depth must exceed the base length unless the base has a "
                "maximal terminal and no exclusions"
            )
        return [base.word]
    blocked = frozenset().union(*cyl.excluded_sets) if cyl.excluded_sets else frozenset()
    ok_sources = base.terminal - blocked
    firsts = [
        e
        for e in g.edges_sorted()
        if g.source[e] in ok_sources and e not in cyl.excluded_edges
    ]
    seeds = [base.word + (e,) for e in firsts]
    return _grow(adj, seeds, depth - n - 1)


def refine_words(
    g: Ultragraph, cylinders: Sequence[CylinderSet], depth: int
) -> Tuple[Tuple[Edge, ...], ...]:
    """The union of the cylinders as a sorted tuple of depth-d edge words.

    Each word w stands for the pure cylinder D((w, range of last edge)),
    and on a sink-free graph those cylinders partition the boundary by
    depth-d prefix, so two unions agree iff their word tuples agree.
    """
    require_no_sinks(g, "cylinder refinement")
    adj = edge_adjacency(g)
    words = set()
    for cyl in cylinders:
        words.update(_cylinder_words(g, adj, cyl, depth))
    return tuple(sorted(words))


def refine_to_depth(
    g: Ultragraph, cylinders: Sequence[CylinderSet], depth: int
) -> Tuple[CylinderSet, ...]:
    """Canonical disjoint normal form: pure depth-d cylinders with maximal
    terminals."""
    return tuple(
        CylinderSet(base=Ultrapath(w, g.range[w[-1]]))
        for w in refine_words(g, cylinders, depth)
    )


@dataclass
class CKFamily:
    """Projections indexed by the nonempty lattice sets, one isometry slice
    per edge, all realized as bisections."""

    projections: Dict[VSet, Bisection]
    isometries: Dict[Edge, Bisection]


def ck_family(g: Ultragraph, lat: LatticeG0) -> CKFamily:
    require_no_sinks(g, "Cuntz-Krieger family construction")
    projections = {
        A: Bisection(idempotent(vertex_path(A))) for A in lat.nonempty()
    }
    isometries = {
        e: Bisection(
            SGElement(
                Ultrapath((e,), g.range[e]), Ultrapath((), g.range[e])
            )
        )
        for e in g.edges_sorted()
    }
    return CKFamily(projections=projections, isometries=isometries)


def _fmt_words(words, cap: int = 12) -> str:
    shown = [("." if not w else "".join(w)) for w in words[:cap]]
    tail = "" if len(words) <= cap else f" (+{len(words) - cap} more)"
    return "[" + " ".join(shown) + "]" + tail


def check_family(
    g: Ultragraph, lat: LatticeG0, fam: CKFamily, depth: int
) -> CheckReport:
    """Decide the Cuntz-Krieger relations for the given family by semigroup
    products and depth-d refinement.

    Depth must be at least 2 so that terminal data one step past an edge is
    visible; all identities are exact, and failures carry the offending
    indices and both refinements.
    """
    require_no_sinks(g, "Cuntz-Krieger verification")
    if depth < 2:
        raise ValueError("verification depth must be at least 2")
    adj = edge_adjacency(g)
    entries: List[CheckResult] = []
    words_memo: Dict[Ultrapath, Tuple[Tuple[Edge, ...], ...]] = {}

    def words_of(base: Ultrapath) -> Tuple[Tuple[Edge, ...], ...]:
        if base not in words_memo:
            words_memo[base] = tuple(
                sorted(_cylinder_words(g, adj, CylinderSet(base=base), depth))
            )
        return words_memo[base]

    # shape: projections sit on their own index, isometries are squares
    shape_bad: List[str] = []
    for A, b in sorted(fam.projections.items(), key=lambda kv: set_key(kv[0])):
        gen = b.generator
        good = (
            not gen.is_omega
            and gen.left == gen.right
            and gen.left.length == 0
            and gen.left.terminal == A
        )
        if not good:
            shape_bad.append(f"projection {format_set(A)} carries {gen}")
    for e, b in sorted(fam.isometries.items()):
        gen = b.generator
        good = (
            not gen.is_omega
            and gen.left.word == (e,)
            and gen.right.length == 0
            and gen.left.terminal == gen.right.terminal
        )
        if not good:
            shape_bad.append(f"isometry {e} carries {gen}")
    entries.append(
        CheckResult("family_shape", not shape_bad, tuple(shape_bad))
    )

    # the empty set indexes the zero projection: no depth-d words at all
    zero_words = _pure_words(g, adj, frozenset(), depth)
    zero_ok = not zero_words and frozenset() not in fam.projections
    entries.append(CheckResult("projection_of_empty_set_is_zero", zero_ok))

    nonempty = lat.nonempty()

    bad: List[str] = []
    for i, A in enumerate(nonempty):
        pa = fam.projections.get(A)
        if pa is None:
            bad.append(f"missing projection {format_set(A)}")
            continue
        for B in nonempty[i:]:
            pb = fam.projections.get(B)
            if pb is None:
                continue
            got = product(g, pa.generator, pb.generator)
            meet = A & B
            if meet:
                want_b = fam.projections.get(meet)
                want = None if want_b is None else want_b.generator
            else:
                want = OMEGA
            if got != want:
                bad.append(
                    f"{format_set(A)} * {format_set(B)}: got {got}, want {want}"
                )
    entries.append(CheckResult("projection_meets", not bad, tuple(bad[:8])))

    bad = []
    for i, A in enumerate(nonempty):
        pa = fam.projections.get(A)
        if pa is None:
            continue
        for B in nonempty[i:]:
            pb = fam.projections.get(B)
            pj = fam.projections.get(A | B)
            if pb is None or pj is None:
                if pj is None:
                    bad.append(f"missing projection {format_set(A | B)}")
                continue
            lhs = words_of(pj.generator.left)
            rhs = tuple(
                sorted(set(words_of(pa.generator.left)) | set(words_of(pb.generator.left)))
            )
            if lhs != rhs:
                bad.append(
                    f"{format_set(A)} + {format_set(B)}: "
                    f"{_fmt_words(lhs)} != {_fmt_words(rhs)}"
                )
    entries.append(CheckResult("projection_joins", not bad, tuple(bad[:8])))

    bad = []
    for e in g.edges_sorted():
        te = fam.isometries.get(e)
        if te is None:
            continue
        got = product(g, star(te.generator), te.generator)
        want_b = fam.projections.get(g.range[e])
        want = None if want_b is None else want_b.generator
        if got != want:
            bad.append(f"edge {e}: got {got}, want {want}")
    entries.append(CheckResult("isometry_range_identity", not bad, tuple(bad[:8])))

    bad = []
    for e in g.edges_sorted():
        te = fam.isometries.get(e)
        if te is None:
            continue
        ee = product(g, te.generator, star(te.generator))
        pv = fam.projections.get(frozenset({g.source[e]}))
        if pv is None:
            bad.append(f"edge {e}: missing projection at source")
            continue
        if not is_idempotent(ee) or not idempotent_leq(g, ee, pv.generator):
            bad.append(f"edge {e}: {ee} is not below the source projection")
    entries.append(CheckResult("isometry_source_domination", not bad, tuple(bad[:8])))

    # every vertex here emits finitely many and at least one edge, and the
    # boundary has no finite points, so the vertex projection must split
    # exactly into its edge slices
    bad = []
    for v in g.vertices_sorted():
        pv = fam.projections.get(frozenset({v}))
        if pv is None:
            bad.append(f"vertex {v}: missing projection")
            continue
        lhs = words_of(pv.generator.left)
        pieces: List[Tuple[Tuple[Edge, ...], ...]] = []
        for e in g.out_edges(v):
            te = fam.isometries.get(e)
            if te is None:
                continue
            ee = product(g, te.generator, star(te.generator))
            if ee.is_omega:
                continue
            pieces.append(words_of(ee.left))
        merged: set = set()
        total = 0
        for piece in pieces:
            merged.update(piece)
            total += len(piece)
        if total != len(merged):
            bad.append(f"vertex {v}: edge slices overlap")
            continue
        rhs = tuple(sorted(merged))
        if lhs != rhs:
            bad.append(
                f"vertex {v}: {_fmt_words(lhs)} != {_fmt_words(rhs)}"
            )
    entries.append(CheckResult("vertex_decomposition", not bad, tuple(bad[:8])))

    return CheckReport(entries=tuple(entries))


def verify_ck(g: Ultragraph, lat: LatticeG0, depth: int = 2) -> CheckReport:
    return check_family(g, lat, ck_family(g, lat), depth)


def check_set_identities(
    g: Ultragraph, lat: LatticeG0, depths: Iterable[int]
) -> CheckReport:
    """Refinement-level laws of the unit-space slices: binary meets and
    joins match set intersection and union of refinements, and a set's
    slice splits over the edges it emits (there are no finite boundary
    points to add on a finite graph)."""
    require_no_sinks(g, "set identity checks")
    adj = edge_adjacency(g)
    entries: List[CheckResult] = []
    for depth in depths:
        memo: Dict[VSet, frozenset] = {}

        def words_for(A: VSet, depth=depth, memo=memo) -> frozenset:
            if A not in memo:
                memo[A] = frozenset(_pure_words(g, adj, A, depth))
            return memo[A]

        bad_meet: List[str] = []
        bad_join: List[str] = []
        for i, A in enumerate(lat.sets):
            for B in lat.sets[i:]:
                if words_for(A & B) != words_for(A) & words_for(B):
                    bad_meet.append(f"{format_set(A)} ^ {format_set(B)}")
                if words_for(A | B) != words_for(A) | words_for(B):
                    bad_join.append(f"{format_set(A)} v {format_set(B)}")
        entries.append(
            CheckResult(f"meet_identity_depth_{depth}", not bad_meet, tuple(bad_meet[:8]))
        )
        entries.append(
            CheckResult(f"join_identity_depth_{depth}", not bad_join, tuple(bad_join[:8]))
        )
        bad_cover: List[str] = []
        for A in lat.sets:
            cover: set = set()
            for e in sorted(emitted_edges(g, A)):
                cover.update(
                    _cylinder_words(
                        g, adj, CylinderSet(base=Ultrapath((e,), g.range[e])), depth
                    )
                )
            if frozenset(cover) != words_for(A):
                bad_cover.append(format_set(A))
        entries.append(
            CheckResult(f"edge_cover_depth_{depth}", not bad_cover, tuple(bad_cover[:8]))
        )
    return CheckReport(entries=tuple(entries))


def build_elements(
    g: Ultragraph,
    lat: LatticeG0,
    witness_len: int,
    prefix_bound: int,
    cycle_bound: int,
    max_count: int = 100_000,
) -> Tuple[GroupoidElement, ...]:
    """Groupoid elements generated by semigroup pairs up to witness_len
    acting on all lassos within the bounds."""
    lassos = enumerate_lassos(g, prefix_bound, cycle_bound)
    out = set()
    for s in generate_elements(g, lat, witness_len):
        if s.is_omega:
            continue
        x, y = s.left, s.right
        for mu in lassos:
            if lasso_source(g, mu) not in x.terminal:
                continue
            left = concat_lasso(g, x, mu)
            right = concat_lasso(g, y, mu)
            out.add(groupoid_element(g, left, x.length - y.length, right))
            if len(out) > max_count:
                raise ValueError(f"element build exceeded max_count={max_count}")
    return tuple(sorted(out, key=_elem_key))


def _elem_key(a: GroupoidElement):
    l, r = _as_ray(a.left), _as_ray(a.right)
    return (l.prefix, l.cycle, a.lag, r.prefix, r.cycle)


def check_groupoid_laws(
    g: Ultragraph, elements: Sequence[GroupoidElement], max_triples: int = 2_000_000
) -> CheckReport:
    """Involution, lag bookkeeping, units, and associativity over every
    composable pair and triple in the sample."""
    entries: List[CheckResult] = []

    bad = [str(a) for a in elements if inverse(inverse(a)) != a or inverse(a).lag != -a.lag]
    entries.append(CheckResult("involution", not bad, tuple(bad[:5])))

    bad = []
    for a in elements:
        u = compose(g, a, inverse(a))
        if u is None or u.lag != 0 or u.left != a.left or u.right != a.left:
            bad.append(str(a))
            continue
        if compose(g, u, a) != a or compose(g, compose(g, a, inverse(a)), a) != a:
            bad.append(str(a))
    entries.append(CheckResult("units_and_inverses", not bad, tuple(bad[:5])))

    by_left: Dict[BoundaryPath, List[GroupoidElement]] = {}
    for a in elements:
        by_left.setdefault(a.left, []).append(a)
    pair_memo: Dict[Tuple[int, int], Optional[GroupoidElement]] = {}
    index = {id(a): i for i, a in enumerate(elements)}

    def mul(a, b):
        key = (index[id(a)], index[id(b)])
        if key not in pair_memo:
            pair_memo[key] = compose(g, a, b)
        return pair_memo[key]

    bad = []
    count = 0
    for a in elements:
        for b in by_left.get(a.right, ()):
            ab = mul(a, b)
            for c in by_left.get(b.right, ()):
                count += 1
                if count > max_triples:
                    raise ValueError("too many composable triples for this sample")
                bc = mul(b, c)
                lhs = None if ab is None else compose(g, ab, c)
                rhs = None if bc is None else compose(g, a, bc)
                if lhs is None or lhs != rhs:
                    bad.append(f"{a} . {b} . {c}")
    entries.append(CheckResult("associativity", not bad, tuple(bad[:5])))
    return CheckReport(entries=tuple(entries))


def split_through(
    g: Ultragraph, s: SGElement, t: SGElement, c: GroupoidElement
) -> Optional[Tuple[GroupoidElement, GroupoidElement]]:
    """Factor a member of the product slice of s and t into a member of
    each factor slice.  The middle point is the longer inner coordinate
    pushed onto the shared tail."""
    prod = product(g, s, t)
    if prod.is_omega:
        return None
    mu = strip_lasso(g, _as_ray(c.left), prod.left)
    if mu is None:
        return None
    w, z = s.left, s.right
    x, y = t.left, t.right
    if initial_segment(g, x, z) is not None:
        mid = concat_lasso(g, x, mu)
    else:
        mid = concat_lasso(g, z, mu)
    if mid is None:
        return None
    a1 = groupoid_element(g, _as_ray(c.left), w.length - z.length, mid)
    a2 = groupoid_element(g, mid, x.length - y.length, _as_ray(c.right))
    return a1, a2


def check_bisection_homomorphism(
    g: Ultragraph,
    gens: Sequence[SGElement],
    elements: Sequence[GroupoidElement],
) -> CheckReport:
    """The slice of a product is exactly the set of composable products of
    slice members: forward by composing members, backward by splitting."""
    bis = {id(s): Bisection(s) for s in gens}
    members: Dict[int, List[GroupoidElement]] = {
        id(s): [a for a in elements if bisection_member(g, bis[id(s)], a)]
        for s in gens
    }
    bad: List[str] = []
    checked = 0
    for s in gens:
        for t in gens:
            pb = Bisection(product(g, s, t))
            for a1 in members[id(s)]:
                for a2 in members[id(t)]:
                    if a1.right != a2.left:
                        continue
                    checked += 1
                    c = compose(g, a1, a2)
                    if not bisection_member(g, pb, c):
                        bad.append(f"{s} * {t}: product misses {c}")
            if pb.is_empty:
                continue
            for c in elements:
                if not bisection_member(g, pb, c):
                    continue
                checked += 1
                got = split_through(g, s, t, c)
                if got is None:
                    bad.append(f"{s} * {t}: cannot split {c}")
                    continue
                a1, a2 = got
                ok = (
                    bisection_member(g, bis[id(s)], a1)
                    and bisection_member(g, bis[id(t)], a2)
                    and compose(g, a1, a2) == c
                )
                if not ok:
                    bad.append(f"{s} * {t}: bad split of {c}")
    entries = (
        CheckResult(
            "bisection_homomorphism",
            not bad,
            tuple(bad[:5]) + (f"checked {checked} memberships",),
        ),
    )
    return CheckReport(entries=entries)


def check_hausdorff(
    g: Ultragraph,
    pairs: Sequence[Tuple[GroupoidElement, GroupoidElement]],
) -> CheckReport:
    """Separate sampled distinct elements by basic slices.

    Either one element's witness slice already misses the other, or both
    witness slices contain both elements and deepening one witness along
    its tail splits them once the tails diverge."""
    bad: List[str] = []
    for a, b in pairs:
        if a == b:
            continue
        if _separated(g, a, b) or _separated(g, b, a):
            continue
        bad.append(f"{a} vs {b}")
    entries = (CheckResult("hausdorff_separation", not bad, tuple(bad[:5])),)
    return CheckReport(entries=entries)


def _separated(g: Ultragraph, a: GroupoidElement, b: GroupoidElement) -> bool:
    x, y, mu = a.witness
    base = Bisection(SGElement(x, y))
    assert bisection_member(g, base, a)
    if not bisection_member(g, base, b):
        return True
    rb = _as_ray(b.left)
    ra = _as_ray(a.left)
    bound = (
        max(len(ra.prefix), len(rb.prefix))
        + math.lcm(len(ra.cycle), len(rb.cycle))
        + 1
    )
    for k in range(1, bound + 1):
        u_word = unroll(mu, k)
        u = Ultrapath(u_word, g.range[u_word[-1]])
        deeper_x = concat(g, x, u)
        deeper_y = concat(g, y, u)
        assert deeper_x is not None and deeper_y is not None
        deeper = Bisection(SGElement(deeper_x, deeper_y))
        assert bisection_member(g, deeper, a)
        if not bisection_member(g, deeper, b):
            return True
    return False


def check_orbit_density(
    g: Ultragraph, lassos: Sequence[LassoPath], prefix_depth: int = 2
) -> CheckResult:
    """Desk-scale echo of minimality: every basic cylinder around any lasso
    meets the orbit of every other lasso, via a connector word from the
    cylinder's range to some shift of the target."""
    bad: List[str] = []
    for delta in lassos:
        for d in range(1, prefix_depth + 1):
            w = unroll(delta, d)
            rng = g.range[w[-1]]
            for gamma in lassos:
                horizon = len(gamma.prefix) + len(gamma.cycle)
                hit = False
                for k in range(horizon + 1):
                    sk = lasso_source(g, shift_n(gamma, k))
                    if any(reaches(g, t, sk) for t in sorted(rng)):
                        hit = True
                        break
                if not hit:
                    bad.append(f"{delta} prefix {d} cannot meet orbit of {gamma}")
    return CheckResult("orbit_density", not bad, tuple(bad[:5]))
