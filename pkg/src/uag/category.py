"""Desk-scale category of algebraic sets, substitutions, and the closure functor.

Objects are pairs (X, A) with A an algebraic set over H; morphisms come from
substitutions s: W(Y) -> W(X) mapping A into B.  The contravariant closure
functor acts on congruence oracles by preimage; scalar-relabelling
automorphisms transport closed congruences between an algebra and its
twists.  End W is infinite, so the endomorphism relation calculus is
exercised through bounded seeded samples plus canonical witnesses.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass

from .algebras import (
    DEFAULT_ASSIGNMENT_CAP,
    FiniteAlgebra,
    Point,
    PointSet,
    eval_term,
    solution_points,
)
from .congruences import CongruenceOracle, KernelOfSet, Preimage
from .errors import CapExceeded, SignatureError
from .fields import FieldAutomorphism
from .geometry import (
    AlgebraicSet,
    AlgebraicSetLattice,
    UniverseBound,
    closure_oracle,
    double_closure_points,
    lattice,
    term_universe,
    universe_equations,
)
from .palgebra import scalar_symbol
from .terms import App, Equation, EquationSystem, Term, Var, print_term, substitute

__all__ = [
    "Substitution",
    "AffineObject",
    "SetMorphism",
    "QuotientObject",
    "build_quotient",
    "SemiinnerAutomorphismData",
    "AlphaEntry",
    "alpha",
    "alpha_transport_oracle",
    "induced_point_map",
    "check_morphism",
    "cl_preimage",
    "rho",
    "tau_of_rho_membership",
    "EndoPairWindow",
    "endo_pair_window",
    "NaturalityReport",
    "naturality_check",
    "compatibility_check",
    "DualityReport",
    "duality_roundtrip",
    "LatticeIsoReport",
    "lattice_isomorphism_check",
    "CategoryGraph",
    "export_category",
]


# ---------------------------------------------------------------------------
# substitutions and the affine category

@dataclass(frozen=True)
class Substitution:
    """s: W(source) -> W(target), one term over `target` per source variable."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    images: tuple[Term, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source):
            raise SignatureError("substitution must be total on its source variables")

    @staticmethod
    def identity(vars: tuple[str, ...]) -> "Substitution":
        return Substitution(vars, vars, tuple(Var(v) for v in vars))

    @staticmethod
    def of(source: tuple[str, ...], target: tuple[str, ...], mapping: dict[str, Term]) -> "Substitution":
        return Substitution(source, target, tuple(mapping[v] for v in source))

    def term(self, var: str) -> Term:
        return self.images[self.source.index(var)]

    def mapping(self) -> dict[str, Term]:
        return dict(zip(self.source, self.images))

    def apply(self, t: Term) -> Term:
        """Image of a term over `source` under s (a term over `target`)."""
        return substitute(t, self.mapping())

    def compose(self, inner: "Substitution") -> "Substitution":
        """self o inner (apply inner first): W(inner.source) -> W(self.target)."""
        if inner.target != self.source:
            raise SignatureError("substitutions do not compose")
        return Substitution(inner.source, self.target, tuple(self.apply(t) for t in inner.images))


def induced_point_map(s: Substitution, point: Point, algebra: FiniteAlgebra) -> Point:
    """The affine map: a point over s.target yields one over s.source (nu o s)."""
    if point.vars != s.target:
        raise SignatureError("point is not over the substitution's target variables")
    return Point(s.source, tuple(eval_term(t, point, algebra) for t in s.images))


@dataclass(frozen=True)
class AffineObject:
    """(X, A): an algebraic set in its affine space."""

    vars: tuple[str, ...]
    aset: AlgebraicSet

    def __post_init__(self):
        if self.aset.vars != self.vars:
            raise SignatureError("algebraic set is over different variables")


def check_morphism(s: Substitution, domain: AffineObject, codomain: AffineObject,
                   algebra: FiniteAlgebra) -> bool:
    """Does s define [s]: (X, A) -> (Y, B), i.e. does it map A into B?"""
    if s.target != domain.vars or s.source != codomain.vars:
        return False
    b = {p.values for p in codomain.aset.points}
    return all(induced_point_map(s, p, algebra).values in b for p in domain.aset.points)


@dataclass(frozen=True)
class SetMorphism:
    sub: Substitution
    domain: AffineObject
    codomain: AffineObject
    algebra: FiniteAlgebra

    def __post_init__(self):
        if not check_morphism(self.sub, self.domain, self.codomain, self.algebra):
            raise SignatureError("substitution does not map the domain into the codomain")

    def then(self, other: "SetMorphism") -> "SetMorphism":
        """Composite (domain -> other.codomain)."""
        if other.domain != self.codomain:
            raise SignatureError("morphisms do not compose")
        return SetMorphism(self.sub.compose(other.sub), self.domain, other.codomain, self.algebra)

    def induced_images(self) -> tuple[tuple[int, ...], ...]:
        """The point map A -> B; morphism classes [s] are equal iff these agree."""
        return tuple(
            induced_point_map(self.sub, p, self.algebra).values for p in self.domain.aset.points
        )


def cl_preimage(s: Substitution, oracle: CongruenceOracle) -> Preimage:
    """Cl_H(s): a closed congruence on W(target) pulls back to one on W(source)."""
    return Preimage.of(s.mapping(), oracle)


# ---------------------------------------------------------------------------
# quotient models W/T as row subalgebras

@dataclass
class QuotientObject:
    vars: tuple[str, ...]
    algebra: FiniteAlgebra
    elements: list[tuple[int, ...]]
    witnesses: list[Term]
    tables: dict[str, tuple[int, ...]]
    fingerprint: str

    @property
    def size(self) -> int:
        return len(self.elements)


def build_quotient(vars: tuple[str, ...], points: PointSet, algebra: FiniteAlgebra,
                   cap: int = DEFAULT_ASSIGNMENT_CAP) -> QuotientObject:
    """The subalgebra of H^A generated by the variable rows, with witnesses.

    This is a concrete model of W/A': rows are term evaluations over the
    point set.  The fingerprint hashes the tables after relabelling elements
    into lexicographic row order, so it is independent of generator order.
    """
    k = len(points)
    rows: list[tuple[int, ...]] = []
    wits: list[Term] = []
    index: dict[tuple[int, ...], int] = {}
    pts = list(points)

    def add(row: tuple[int, ...], wit: Term) -> None:
        if row in index:
            return
        if len(rows) >= cap:
            raise CapExceeded("quotient model generation", len(rows) + 1, cap)
        index[row] = len(rows)
        rows.append(row)
        wits.append(wit)

    for i, v in enumerate(vars):
        add(tuple(p.values[i] for p in pts), Var(v))
    for sym in algebra.signature.constants:
        add((algebra.tables[sym.name][0],) * k, App(sym.name, ()))
    n = algebra.size
    ops = [s for s in algebra.signature.symbols if s.arity >= 1]
    t = 0
    while t < len(rows):
        cur = rows[t]
        for sym in ops:
            tbl = algebra.tables[sym.name]
            if sym.arity == 1:
                add(tuple(tbl[x] for x in cur), App(sym.name, (wits[t],)))
            elif sym.arity == 2:
                for j in range(t + 1):
                    other = rows[j]
                    add(tuple(tbl[a * n + b] for a, b in zip(cur, other)), App(sym.name, (wits[t], wits[j])))
                    if j < t:
                        add(tuple(tbl[a * n + b] for a, b in zip(other, cur)), App(sym.name, (wits[j], wits[t])))
            else:
                for combo in itertools.product(range(t + 1), repeat=sym.arity):
                    if max(combo) != t:
                        continue
                    out = []
                    for coords in zip(*[rows[j] for j in combo]):
                        idx = 0
                        for a in coords:
                            idx = idx * n + a
                        out.append(tbl[idx])
                    add(tuple(out), App(sym.name, tuple(wits[j] for j in combo)))
        t += 1

    tables: dict[str, tuple[int, ...]] = {}
    for sym in algebra.signature.symbols:
        entries = []
        for combo in itertools.product(range(len(rows)), repeat=sym.arity):
            out = []
            for coords in zip(*[rows[j] for j in combo]) if combo else [()]:
                pass
            if sym.arity == 0:
                entries.append(index[(algebra.tables[sym.name][0],) * k])
                continue
            res = []
            for pos in range(k):
                idx = 0
                for j in combo:
                    idx = idx * n + rows[j][pos]
                res.append(algebra.tables[sym.name][idx])
            entries.append(index[tuple(res)])
        tables[sym.name] = tuple(entries)

    order = sorted(range(len(rows)), key=lambda i: rows[i])
    relabel = {old: new for new, old in enumerate(order)}
    canon = []
    for sym in algebra.signature.symbols:
        entries = tables[sym.name]
        size = len(rows)
        canon_entries = []
        for combo in itertools.product(order, repeat=sym.arity):
            idx = 0
            for j in combo:
                idx = idx * size + j
            canon_entries.append(relabel[entries[idx]])
        canon.append((sym.name, tuple(canon_entries)))
    digest = hashlib.sha256(json.dumps([len(rows), canon], sort_keys=True).encode()).hexdigest()
    return QuotientObject(vars, algebra, rows, wits, tables, digest)


# ---------------------------------------------------------------------------
# endomorphism relation calculus (rho / tau)

def rho(oracle: CongruenceOracle, nu: Substitution, nup: Substitution) -> bool:
    """nu rho nu'  iff  mu_T nu = mu_T nu', i.e. all variable images are T-equal."""
    if nu.source != nup.source:
        raise SignatureError("endomorphism pair over different variable sets")
    return all(oracle.decide(a, b) for a, b in zip(nu.images, nup.images))


def tau_of_rho_membership(oracle: CongruenceOracle, w1: Term, w2: Term,
                          vars: tuple[str, ...]) -> bool:
    """(w1, w2) in tau(rho(T)) via the canonical witness.

    The witness is the first variable x0: the endomorphisms sending x0 to w1
    resp. w2 (fixing the rest) are rho-related exactly when T relates the
    pair, and they exhibit (w1, w2) = (x0^nu, x0^nu').
    """
    x0 = vars[0]
    base = {v: Var(v) for v in vars}
    nu = Substitution.of(vars, vars, {**base, x0: w1})
    nup = Substitution.of(vars, vars, {**base, x0: w2})
    return rho(oracle, nu, nup)


@dataclass(frozen=True)
class EndoPairWindow:
    """A deterministic seeded sample of endomorphism pairs of bounded depth."""

    vars: tuple[str, ...]
    bound: UniverseBound
    seed: int
    pairs: tuple[tuple[Substitution, Substitution], ...]


def endo_pair_window(algebra: FiniteAlgebra, vars: tuple[str, ...], bound: UniverseBound,
                     seed: int = 0, count: int = 50) -> EndoPairWindow:
    terms = term_universe(algebra, vars, bound)
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        nu = Substitution(vars, vars, tuple(rng.choice(terms) for _ in vars))
        nup = Substitution(vars, vars, tuple(rng.choice(terms) for _ in vars))
        pairs.append((nu, nup))
    return EndoPairWindow(vars, bound, seed, tuple(pairs))


# ---------------------------------------------------------------------------
# scalar-relabelling (semiinner) automorphism data

@dataclass(frozen=True)
class SemiinnerAutomorphismData:
    """Identity on objects; applies sigma to every scalar symbol in terms."""

    sigma: FieldAutomorphism

    def _op_map(self) -> dict[str, str]:
        return {scalar_symbol(i): scalar_symbol(self.sigma(i)) for i in range(self.sigma.field.q)}

    def apply_term(self, t: Term) -> Term:
        if isinstance(t, Var):
            return t
        m = self._op_map()
        return App(m.get(t.op, t.op), tuple(self.apply_term(a) for a in t.args))

    def apply_equation(self, eq: Equation) -> Equation:
        return Equation(self.apply_term(eq.lhs), self.apply_term(eq.rhs))

    def apply_system(self, system: EquationSystem) -> EquationSystem:
        return EquationSystem(system.vars, tuple(self.apply_equation(e) for e in system.equations))

    def apply_substitution(self, s: Substitution) -> Substitution:
        return Substitution(s.source, s.target, tuple(self.apply_term(t) for t in s.images))

    def inverse(self) -> "SemiinnerAutomorphismData":
        return SemiinnerAutomorphismData(self.sigma.inverse())


@dataclass(frozen=True)
class _TransportOracle(CongruenceOracle):
    """alpha on the oracle level: decide through phi^{-1} on both terms."""

    phi_inverse: SemiinnerAutomorphismData
    base: CongruenceOracle

    def decide(self, w: Term, w2: Term) -> bool:
        return self.base.decide(self.phi_inverse.apply_term(w), self.phi_inverse.apply_term(w2))


def alpha_transport_oracle(phi: SemiinnerAutomorphismData, base: CongruenceOracle) -> CongruenceOracle:
    return _TransportOracle(phi.inverse(), base)


@dataclass(frozen=True)
class AlphaEntry:
    """One W-component of alpha: generators transported, plus verification."""

    vars: tuple[str, ...]
    source_system: EquationSystem
    image_system: EquationSystem
    transport_agrees: bool      # generator image closure == oracle-level transport on the window
    tau_formula_agrees: bool    # sampled tau(phi(rho T)) pairs all land in the image closure
    pairs_checked: int


def alpha(phi: SemiinnerAutomorphismData, vars: tuple[str, ...], system: EquationSystem,
          h1: FiniteAlgebra, h2: FiniteAlgebra,
          bound: UniverseBound = UniverseBound(), seed: int = 0,
          cap: int = DEFAULT_ASSIGNMENT_CAP) -> AlphaEntry:
    """alpha(phi)_W(T): the H2-closure of the sigma-relabelled generators.

    The tau-phi-rho formula is demoted to a verification path: sampled
    rho-related endomorphism pairs are pushed through phi and their tau
    pairs must land in the image closure; the canonical-witness direction is
    the oracle-transport agreement over the bounded universe.
    """
    image_system = phi.apply_system(system)
    src = closure_oracle(system, h1, cap)
    img = closure_oracle(image_system, h2, cap)
    transport = alpha_transport_oracle(phi, src)

    pairs = universe_equations(h2, vars, bound, include_diagonal=True)
    transport_agrees = all(
        img.decide(e.lhs, e.rhs) == transport.decide(e.lhs, e.rhs) for e in pairs
    )

    window = endo_pair_window(h1, vars, bound, seed=seed, count=40)
    terms = term_universe(h1, vars, UniverseBound(1, bound.max_vars, bound.max_pairs))
    tau_ok = True
    for nu, nup in window.pairs:
        if not rho(src, nu, nup):
            continue
        pnu, pnup = phi.apply_substitution(nu), phi.apply_substitution(nup)
        for w in terms:
            pw = phi.apply_term(w)
            if not img.decide(pnu.apply(pw), pnup.apply(pw)):
                tau_ok = False
                break
        if not tau_ok:
            break
    return AlphaEntry(vars, system, image_system, transport_agrees, tau_ok, len(pairs))


@dataclass(frozen=True)
class NaturalityReport:
    commutes: bool
    pairs_checked: int
    failing_pair: Equation | None
    bound: UniverseBound


def naturality_check(phi: SemiinnerAutomorphismData, s: Substitution, system: EquationSystem,
                     h1: FiniteAlgebra, h2: FiniteAlgebra,
                     bound: UniverseBound = UniverseBound(),
                     cap: int = DEFAULT_ASSIGNMENT_CAP) -> NaturalityReport:
    """Square Cl_{H2}(phi(s)) . alpha_{W2}  =  alpha_{W1} . Cl_{H1}(s).

    Both composites are congruences on W(s.source); they are compared as
    decision oracles on every pair of the bounded universe.
    """
    if system.vars != s.target:
        raise SignatureError("system must live over the substitution's target")
    img = closure_oracle(phi.apply_system(system), h2, cap)
    lhs = cl_preimage(phi.apply_substitution(s), img)
    src = closure_oracle(system, h1, cap)
    rhs = alpha_transport_oracle(phi, cl_preimage(s, src))

    checked = 0
    for eq in universe_equations(h2, s.source, bound, include_diagonal=True):
        checked += 1
        if lhs.decide(eq.lhs, eq.rhs) != rhs.decide(eq.lhs, eq.rhs):
            return NaturalityReport(False, checked, eq, bound)
    return NaturalityReport(True, checked, None, bound)


def compatibility_check(phi: SemiinnerAutomorphismData, s1: Substitution, s2: Substitution,
                        system: EquationSystem, h1: FiniteAlgebra, h2: FiniteAlgebra,
                        cap: int = DEFAULT_ASSIGNMENT_CAP) -> bool:
    """mu_T s1 = mu_T s2  iff  mu_{T*} phi(s1) = mu_{T*} phi(s2), with T* = alpha(T)."""
    if s1.source != s2.source or s1.target != s2.target:
        raise SignatureError("substitution pair must share source and target")
    src = closure_oracle(system, h1, cap)
    left = all(src.decide(a, b) for a, b in zip(s1.images, s2.images))
    img = closure_oracle(phi.apply_system(system), h2, cap)
    p1, p2 = phi.apply_substitution(s1), phi.apply_substitution(s2)
    right = all(img.decide(a, b) for a, b in zip(p1.images, p2.images))
    return left == right


# ---------------------------------------------------------------------------
# duality roundtrip and lattice isomorphism

@dataclass(frozen=True)
class DualityReport:
    roundtrip_exact: bool       # (A')' == A
    window_agrees: bool | None  # for hinted sets: kernel window == closure window
    quotient_size: int
    fingerprint: str


def duality_roundtrip(vars: tuple[str, ...], aset: AlgebraicSet, algebra: FiniteAlgebra,
                      bound: UniverseBound = UniverseBound(),
                      cap: int = DEFAULT_ASSIGNMENT_CAP) -> DualityReport:
    """(X, A) -> W/A' -> (X, (A')') and back, at desk scale."""
    back = double_closure_points(aset.points, algebra, cap, hint=aset.hint)
    exact = back.points.points == aset.points.points
    window_agrees = None
    if aset.hint is not None:
        kernel = KernelOfSet(aset.points, algebra)
        closure = closure_oracle(aset.hint, algebra, cap)
        window_agrees = all(
            kernel.decide(e.lhs, e.rhs) == closure.decide(e.lhs, e.rhs)
            for e in universe_equations(algebra, vars, bound, include_diagonal=True)
        )
    model = build_quotient(vars, aset.points, algebra, cap)
    return DualityReport(exact, window_agrees, model.size, model.fingerprint)


@dataclass(frozen=True)
class LatticeIsoReport:
    verified: bool
    size: int
    bijective: bool
    order_preserved: bool
    order_reflected: bool
    mode: str            # "exhaustive" | "sampled"
    transports_checked: int
    order_pairs_checked: int


def lattice_isomorphism_check(phi: SemiinnerAutomorphismData, vars: tuple[str, ...],
                              h1: FiniteAlgebra, h2: FiniteAlgebra,
                              point_cap: int = 16, transport_cap: int = 4096,
                              sample: int = 512, seed: int = 0,
                              cap: int = DEFAULT_ASSIGNMENT_CAP) -> LatticeIsoReport:
    """Map each closed set of H1 through alpha and compare the two lattices.

    Every closed set is transported via its defining system when the lattice
    is small enough; above `transport_cap` the transport is verified on a
    seeded sample of sets and the mask families are compared exhaustively
    (exact, since both lattices live on the same coordinate grid).  Order
    preservation/reflection is checked on all pairs when feasible, else on a
    seeded sample.
    """
    l1 = lattice(vars, h1, point_cap=point_cap)
    l2 = lattice(vars, h2, point_cap=point_cap)
    size = len(l1)
    rng = random.Random(seed)

    exhaustive = size <= transport_cap
    indices = range(size) if exhaustive else sorted(rng.sample(range(size), min(sample, size)))
    image_mask: dict[int, int] = {}
    transports = 0
    ok = len(l1) == len(l2)
    for i in indices:
        system = l1.defining_system(i)
        image_sys = phi.apply_system(system)
        pts = solution_points(image_sys, h2, cap)
        mask = l2.mask_of_points(p.values for p in pts)
        transports += 1
        if not l2.is_closed_mask(mask):
            ok = False
            break
        image_mask[i] = mask

    bijective = ok
    if ok:
        if exhaustive:
            bijective = size == len(l2) and sorted(image_mask.values()) == sorted(l2.masks)
        else:
            # sampled transports must be injective; families must coincide exactly
            bijective = (
                len(set(image_mask.values())) == len(image_mask)
                and l1.masks == l2.masks
                and all(image_mask[i] == l1.masks[i] for i in image_mask)
            )

    order_pairs = 0
    preserved = reflected = bijective
    if bijective:
        if exhaustive and size <= 1024:
            pair_iter = itertools.combinations(range(size), 2)
        else:
            universe = list(image_mask.keys())
            pair_iter = (
                (rng.choice(universe), rng.choice(universe)) for _ in range(min(sample * 4, size * size))
            )
        for i, j in pair_iter:
            if i == j:
                continue
            order_pairs += 1
            fwd = (l1.masks[i] & ~l1.masks[j] == 0)
            img = (image_mask[i] & ~image_mask[j] == 0)
            if fwd and not img:
                preserved = False
            if img and not fwd:
                reflected = False
            if not (preserved and reflected):
                break

    verified = bijective and preserved and reflected
    return LatticeIsoReport(
        verified, size, bijective, preserved, reflected,
        "exhaustive" if exhaustive else "sampled", transports, order_pairs,
    )


# ---------------------------------------------------------------------------
# graph export

@dataclass
class CategoryGraph:
    nodes: list[dict]
    edges: list[dict]

    def to_json(self) -> str:
        return json.dumps({"nodes": self.nodes, "edges": self.edges}, sort_keys=True, indent=2)

    def to_dot(self) -> str:
        lines = ["digraph category {"]
        for n in self.nodes:
            lines.append(f'  "{n["id"]}" [label="{n["label"]}"];')
        for e in self.edges:
            lines.append(f'  "{e["source"]}" -> "{e["target"]}" [label="{e["label"]}"];')
        lines.append("}")
        return "\n".join(lines)


def export_category(var_counts: list[int], algebra: FiniteAlgebra, depth: int = 1,
                    point_cap: int = 16, morphism_cap: int = 100000) -> CategoryGraph:
    """Objects (X, A) for |X| in the range; morphism classes [s] up to depth.

    Substitution classes are deduplicated by their induced point maps, which
    is the identification of simultaneous mappings A -> B.
    """
    from .equivalence import window_vars

    objects: list[tuple[tuple[str, ...], AlgebraicSetLattice, int]] = []
    nodes = []
    for k in var_counts:
        vars = window_vars(k)
        lat = lattice(vars, algebra, point_cap=point_cap)
        for i in range(len(lat)):
            objects.append((vars, lat, i))
            nodes.append(
                {
                    "id": f"X{k}S{i}",
                    "label": f"|X|={k} {lat.points_of(i)}",
                    "vars": list(vars),
                    "points": [list(v) for v in lat.points_of(i)],
                }
            )
    edges = []
    bound = UniverseBound(depth, max(var_counts), 10**9)
    for (xv, xl, xi), xnode in zip(objects, nodes):
        dom_pts = [Point(xv, v) for v in xl.points_of(xi)]
        for (yv, yl, yi), ynode in zip(objects, nodes):
            terms = term_universe(algebra, xv, bound)
            total = len(terms) ** len(yv)
            if total > morphism_cap:
                raise CapExceeded("morphism enumeration", total, morphism_cap)
            target = {tuple(v) for v in yl.points_of(yi)}
            classes: dict[tuple, Substitution] = {}
            counts: dict[tuple, int] = {}
            for images in itertools.product(terms, repeat=len(yv)):
                s = Substitution(yv, xv, images)
                induced = tuple(
                    tuple(eval_term(t, p, algebra) for t in images) for p in dom_pts
                )
                if any(v not in target for v in induced):
                    continue
                counts[induced] = counts.get(induced, 0) + 1
                if induced not in classes:
                    classes[induced] = s
            for induced in sorted(classes, key=lambda ind: str(ind)):
                s = classes[induced]
                label = ";".join(
                    f"{v}->{print_term(t, algebra.signature)}" for v, t in zip(s.source, s.images)
                )
                edges.append(
                    {
                        "source": xnode["id"],
                        "target": ynode["id"],
                        "label": label,
                        "class_size": counts[induced],
                    }
                )
    return CategoryGraph(nodes, edges)
