"""Finite permutative categories and the multilinear functor calculus.

A permutative category here is strict: the sum is associative and unital
on the nose, only the symmetry is data.  :class:`FinPermCat` is the
table-backed implementation; the free construction provides a view with
the same method surface, and every validator in this module works on
either (tables are total, views evaluate globally, so checks are simply
enumerated over a finite object window).

Morphism-level conventions: ``compose(g, f)`` applies ``f`` first; sums
fold on the left, an empty sum is the unit object.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import BoundExceededError, ComposabilityError, MalformedStructureError
from .perms import Permutation, Profile, perm_act
from .reports import CheckReport

_SKIP = object()


def _try(fn, *args):
    """Evaluate, treating out-of-bound composites as skippable.

    Views over arity-truncated bases cannot evaluate every instance; the
    axiom checks are restricted to in-bound composites.
    """
    try:
        return fn(*args)
    except BoundExceededError:
        return _SKIP


@dataclass(frozen=True)
class FinPermCat:
    name: str
    objects: tuple
    mor_src: Mapping
    mor_tgt: Mapping
    identities: Mapping     # obj -> morphism
    composition: Mapping    # (g, f) -> g after f
    unit: object            # unit object e
    sums: Mapping           # (x, y) -> object
    mor_sums: Mapping       # (f, g) -> morphism
    symmetries: Mapping     # (x, y) -> morphism x+y -> y+x

    def object_list(self) -> tuple:
        return self.objects

    def morphisms(self) -> tuple:
        return tuple(self.mor_src)

    def src(self, f):
        return self.mor_src[f]

    def tgt(self, f):
        return self.mor_tgt[f]

    def hom(self, x, y) -> tuple:
        return tuple(f for f in self.mor_src
                     if self.mor_src[f] == x and self.mor_tgt[f] == y)

    def identity(self, x):
        try:
            return self.identities[x]
        except KeyError:
            raise MalformedStructureError(f"no identity for {x!r}")

    def compose(self, g, f):
        if self.mor_tgt[f] != self.mor_src[g]:
            raise ComposabilityError(f"{f!r} then {g!r}")
        try:
            return self.composition[g, f]
        except KeyError:
            raise MalformedStructureError(f"missing composite ({g!r}, {f!r})")

    def sum_obj(self, x, y):
        try:
            return self.sums[x, y]
        except KeyError:
            raise MalformedStructureError(f"missing object sum ({x!r}, {y!r})")

    def sum_mor(self, f, g):
        try:
            return self.mor_sums[f, g]
        except KeyError:
            raise MalformedStructureError(f"missing morphism sum ({f!r}, {g!r})")

    def xi(self, x, y):
        try:
            return self.symmetries[x, y]
        except KeyError:
            raise MalformedStructureError(f"missing symmetry ({x!r}, {y!r})")


def sum_objs(C, objs: Sequence):
    """Left-normalized object sum; empty sum is the unit."""
    total = C.unit
    for x in objs:
        total = C.sum_obj(total, x)
    return total


def sum_mors(C, mors: Sequence):
    """Left-normalized morphism sum; empty sum is the unit identity."""
    total = C.identity(C.unit)
    for f in mors:
        total = C.sum_mor(total, f)
    return total


def perm_to_morphism(C, perm: Permutation, profile: Profile):
    """The canonical morphism ``x_1 + ... + x_n -> x_{perm(1)} + ...``
    built by factoring ``perm`` into adjacent transpositions, each realized
    as ``1 + xi + 1``.

    Coherence of permutative categories makes the result independent of
    the factorization; that independence is re-checked by property tests
    rather than trusted.
    """
    if len(profile) != perm.degree:
        raise ComposabilityError(f"profile length {len(profile)} vs degree {perm.degree}")
    current = list(range(1, perm.degree + 1))    # source indices, positionwise
    target = list(perm.images)
    morphism = C.identity(sum_objs(C, profile))
    while current != target:
        # bubble the next out-of-place index leftwards
        a = next(i for i, v in enumerate(current) if v != target[i])
        b = current.index(target[a])
        for pos in range(b, a, -1):
            left = sum_mors(C, [C.identity(profile[i - 1]) for i in current[:pos - 1]])
            swap = C.xi(profile[current[pos - 1] - 1], profile[current[pos] - 1])
            right = sum_mors(C, [C.identity(profile[i - 1]) for i in current[pos + 1:]])
            step = C.sum_mor(C.sum_mor(left, swap), right)
            morphism = C.compose(step, morphism)
            current[pos - 1], current[pos] = current[pos], current[pos - 1]
    return morphism


def validate_permcat(C, objects: Sequence | None = None,
                     interchange_objects: Sequence | None = None) -> CheckReport:
    """Exhaustive check of the permutative category axioms over a window.

    ``interchange_objects`` optionally restricts the two quadratic-cost
    diagrams (sum interchange, morphism-level sum associativity) to a
    smaller window; by default they run over the full window.  Ill-typed
    components (a leg that cannot even be composed) are violations.
    """
    objs = tuple(objects) if objects is not None else C.object_list()
    report = CheckReport(getattr(C, "name", "permcat"))
    mors = [f for x in objs for y in objs for f in C.hom(x, y)]
    heavy_objs = objs if interchange_objects is None else tuple(interchange_objects)
    heavy = (mors if interchange_objects is None else
             [f for x in heavy_objs for y in heavy_objs for f in C.hom(x, y)])

    plain_expect = report.expect

    def guarded_expect(axiom, lhs, rhs, witness):
        try:
            return plain_expect(axiom, lhs() if callable(lhs) else lhs,
                                rhs() if callable(rhs) else rhs, witness)
        except (ComposabilityError, MalformedStructureError):
            report.count(axiom)
            report.violation(axiom, ("ill-typed",) + tuple(
                witness if isinstance(witness, tuple) else (witness,)))
            return False

    for x in objs:
        i = C.identity(x)
        report.expect("identity-typing", (C.src(i), C.tgt(i)), (x, x), ("id", x))
    for f in mors:
        report.expect("category-unity", C.compose(C.identity(C.tgt(f)), f), f, ("left", f))
        report.expect("category-unity", C.compose(f, C.identity(C.src(f))), f, ("right", f))
    for f in mors:
        for g in mors:
            if C.src(g) != C.tgt(f):
                continue
            gf = _try(C.compose, g, f)
            if gf is _SKIP:
                continue
            for h in mors:
                if C.src(h) != C.tgt(g):
                    continue
                lhs = _try(C.compose, h, gf)
                hg = _try(C.compose, h, g)
                if lhs is _SKIP or hg is _SKIP:
                    continue
                rhs = _try(C.compose, hg, f)
                if rhs is _SKIP:
                    continue
                report.expect("category-associativity", lhs, rhs, (h, g, f))

    for x in objs:
        report.expect("sum-unity", C.sum_obj(C.unit, x), x, ("left", x))
        report.expect("sum-unity", C.sum_obj(x, C.unit), x, ("right", x))
    for x, y, z in itertools.product(objs, repeat=3):
        report.expect("sum-associativity",
                      C.sum_obj(C.sum_obj(x, y), z), C.sum_obj(x, C.sum_obj(y, z)), (x, y, z))

    for x, y in itertools.product(objs, repeat=2):
        report.expect("sum-functoriality",
                      C.sum_mor(C.identity(x), C.identity(y)),
                      C.identity(C.sum_obj(x, y)), ("identities", x, y))
    for f in mors:
        e_id = C.identity(C.unit)
        report.expect("sum-unity-morphisms", C.sum_mor(e_id, f), f, ("left", f))
        report.expect("sum-unity-morphisms", C.sum_mor(f, e_id), f, ("right", f))
    for f, g in itertools.product(mors, repeat=2):
        report.expect("sum-typing",
                      (C.src(C.sum_mor(f, g)), C.tgt(C.sum_mor(f, g))),
                      (C.sum_obj(C.src(f), C.src(g)), C.sum_obj(C.tgt(f), C.tgt(g))),
                      ("sum", f, g))
    for f, g in itertools.product(heavy, repeat=2):
        for f2 in heavy:
            if C.src(f2) != C.tgt(f):
                continue
            f2f = _try(C.compose, f2, f)
            if f2f is _SKIP:
                continue
            for g2 in heavy:
                if C.src(g2) != C.tgt(g):
                    continue
                g2g = _try(C.compose, g2, g)
                rhs = _try(C.compose, C.sum_mor(f2, g2), C.sum_mor(f, g))
                if g2g is _SKIP or rhs is _SKIP:
                    continue
                report.expect("sum-functoriality",
                              C.sum_mor(f2f, g2g), rhs,
                              ("interchange", f2, f, g2, g))
    for f, g, h in itertools.product(heavy, repeat=3):
        report.expect("sum-associativity",
                      C.sum_mor(C.sum_mor(f, g), h), C.sum_mor(f, C.sum_mor(g, h)),
                      ("morphisms", f, g, h))

    for x, y in itertools.product(objs, repeat=2):
        s = C.xi(x, y)
        report.expect("symmetry-typing",
                      (C.src(s), C.tgt(s)), (C.sum_obj(x, y), C.sum_obj(y, x)), (x, y))
        guarded_expect("symmetry-involution",
                       lambda x=x, y=y, s=s: C.compose(C.xi(y, x), s),
                       C.identity(C.sum_obj(x, y)), (x, y))
    for x in objs:
        report.expect("unit-symmetry", C.xi(x, C.unit), C.identity(x), ("right", x))
        report.expect("unit-symmetry", C.xi(C.unit, x), C.identity(x), ("left", x))
    for f, g in itertools.product(mors, repeat=2):
        guarded_expect(
            "symmetry-naturality",
            lambda f=f, g=g: C.compose(C.xi(C.tgt(f), C.tgt(g)), C.sum_mor(f, g)),
            lambda f=f, g=g: C.compose(C.sum_mor(g, f), C.xi(C.src(f), C.src(g))),
            (f, g))
    for x, y, z in itertools.product(objs, repeat=3):
        guarded_expect(
            "hexagon",
            lambda x=x, y=y, z=z: C.xi(x, C.sum_obj(y, z)),
            lambda x=x, y=y, z=z: C.compose(
                C.sum_mor(C.identity(y), C.xi(x, z)),
                C.sum_mor(C.xi(x, y), C.identity(z))),
            (x, y, z))
    return report


def _apply(m, *args):
    if isinstance(m, Mapping):
        return m[args if len(args) > 1 else args[0]]
    return m(*args)


@dataclass(frozen=True)
class SymMonFunctor:
    """A symmetric monoidal functor with monoidal constraint ``m2`` and
    unit constraint ``m0``.  ``m2=None`` / ``m0=None`` mean identities."""

    source: object
    target: object
    obj_map: Mapping | Callable
    mor_map: Mapping | Callable
    m2: Mapping | Callable | None = None
    m0: object | None = None
    strict: bool = False
    strictly_unital: bool = False
    strong: bool = False

    def on_obj(self, x):
        return _apply(self.obj_map, x)

    def on_mor(self, f):
        return _apply(self.mor_map, f)

    def monoidal(self, x, y):
        if self.m2 is None:
            return self.target.identity(
                self.target.sum_obj(self.on_obj(x), self.on_obj(y)))
        return _apply(self.m2, x, y)

    def unit_constraint(self):
        if self.m0 is None:
            return self.target.identity(self.target.unit)
        return self.m0


def identity_smf(C) -> SymMonFunctor:
    return SymMonFunctor(C, C, lambda x: x, lambda f: f,
                         strict=True, strictly_unital=True, strong=True)


def smf_compose(Q: SymMonFunctor, P: SymMonFunctor) -> SymMonFunctor:
    """Underlying composite with ``(QP)^2 = Q(P^2) . Q^2`` and
    ``(QP)^0 = Q(P^0) . Q^0``."""
    D = Q.target

    def m2(x, y):
        return D.compose(Q.on_mor(P.monoidal(x, y)),
                         Q.monoidal(P.on_obj(x), P.on_obj(y)))

    m0 = D.compose(Q.on_mor(P.unit_constraint()), Q.unit_constraint())
    return SymMonFunctor(P.source, Q.target,
                         lambda x: Q.on_obj(P.on_obj(x)),
                         lambda f: Q.on_mor(P.on_mor(f)),
                         m2, m0,
                         strict=P.strict and Q.strict,
                         strictly_unital=P.strictly_unital and Q.strictly_unital,
                         strong=P.strong and Q.strong)


def _is_invertible(C, f) -> bool | None:
    """Inverse search; ``None`` when the relevant hom is not enumerable."""
    if C.src(f) == C.tgt(f) and f == C.identity(C.src(f)):
        return True
    checker = getattr(C, "is_invertible", None)
    if checker is not None:
        return checker(f)
    candidates = _try(C.hom, C.tgt(f), C.src(f))
    if candidates is _SKIP:
        return None
    return any(C.compose(g, f) == C.identity(C.src(f))
               and C.compose(f, g) == C.identity(C.tgt(f))
               for g in candidates)


def validate_smf(P: SymMonFunctor, objects: Sequence | None = None) -> CheckReport:
    C, D = P.source, P.target
    objs = tuple(objects) if objects is not None else C.object_list()
    report = CheckReport("symmetric-monoidal-functor")
    mors = [f for x in objs for y in objs for f in C.hom(x, y)]

    for f in mors:
        report.expect("functor-typing",
                      (D.src(P.on_mor(f)), D.tgt(P.on_mor(f))),
                      (P.on_obj(C.src(f)), P.on_obj(C.tgt(f))), ("typing", f))
    for x in objs:
        report.expect("functor-identities",
                      P.on_mor(C.identity(x)), D.identity(P.on_obj(x)), ("id", x))
    for f in mors:
        for g in mors:
            if C.src(g) != C.tgt(f):
                continue
            gf = _try(C.compose, g, f)
            if gf is _SKIP:
                continue
            rhs = _try(D.compose, P.on_mor(g), P.on_mor(f))
            if rhs is _SKIP:
                continue
            report.expect("functor-composition", P.on_mor(gf), rhs, (g, f))

    m0 = P.unit_constraint()
    report.expect("unit-constraint-typing",
                  (D.src(m0), D.tgt(m0)), (D.unit, P.on_obj(C.unit)), "m0")

    for x, y in itertools.product(objs, repeat=2):
        c = P.monoidal(x, y)
        report.expect("monoidal-constraint-typing",
                      (D.src(c), D.tgt(c)),
                      (D.sum_obj(P.on_obj(x), P.on_obj(y)), P.on_obj(C.sum_obj(x, y))),
                      (x, y))
    for f, g in itertools.product(mors, repeat=2):
        report.expect("monoidal-constraint-naturality",
                      D.compose(P.monoidal(C.tgt(f), C.tgt(g)),
                                D.sum_mor(P.on_mor(f), P.on_mor(g))),
                      D.compose(P.on_mor(C.sum_mor(f, g)),
                                P.monoidal(C.src(f), C.src(g))), (f, g))
    for x, y, z in itertools.product(objs, repeat=3):
        lhs = D.compose(P.monoidal(C.sum_obj(x, y), z),
                        D.sum_mor(P.monoidal(x, y), D.identity(P.on_obj(z))))
        rhs = D.compose(P.monoidal(x, C.sum_obj(y, z)),
                        D.sum_mor(D.identity(P.on_obj(x)), P.monoidal(y, z)))
        report.expect("monoidal-associativity", lhs, rhs, (x, y, z))
    for x in objs:
        px = P.on_obj(x)
        left = D.compose(P.monoidal(C.unit, x), D.sum_mor(m0, D.identity(px)))
        report.expect("monoidal-unity", left, D.identity(px), ("left", x))
        right = D.compose(P.monoidal(x, C.unit), D.sum_mor(D.identity(px), m0))
        report.expect("monoidal-unity", right, D.identity(px), ("right", x))
    for x, y in itertools.product(objs, repeat=2):
        lhs = D.compose(P.monoidal(y, x), D.xi(P.on_obj(x), P.on_obj(y)))
        rhs = D.compose(P.on_mor(C.xi(x, y)), P.monoidal(x, y))
        report.expect("monoidal-symmetry", lhs, rhs, (x, y))

    if P.strictly_unital or P.strict:
        report.expect("flag-consistency", m0, D.identity(D.unit), "m0-flag")
    if P.strict:
        for x, y in itertools.product(objs, repeat=2):
            c = P.monoidal(x, y)
            report.expect("flag-consistency", c, D.identity(D.src(c)), ("m2-flag", x, y))
    if P.strong:
        for label, value in [("m0-invertible", _is_invertible(D, m0))] + [
                (("m2-invertible", x, y), _is_invertible(D, P.monoidal(x, y)))
                for x, y in itertools.product(objs, repeat=2)]:
            if value is not None:
                report.expect("flag-consistency", value, True, label)
    return report


@dataclass(frozen=True)
class MonoidalNat:
    source: SymMonFunctor
    target: SymMonFunctor
    components: Mapping | Callable

    def at(self, x):
        return _apply(self.components, x)


def identity_monoidal_nat(P: SymMonFunctor) -> MonoidalNat:
    return MonoidalNat(P, P, lambda x: P.target.identity(P.on_obj(x)))


def validate_monoidal_nat(theta: MonoidalNat, objects: Sequence | None = None) -> CheckReport:
    P, Q = theta.source, theta.target
    C, D = P.source, P.target
    objs = tuple(objects) if objects is not None else C.object_list()
    report = CheckReport("monoidal-natural-transformation")
    mors = [f for x in objs for y in objs for f in C.hom(x, y)]

    for x in objs:
        t = theta.at(x)
        report.expect("component-typing",
                      (D.src(t), D.tgt(t)), (P.on_obj(x), Q.on_obj(x)), ("component", x))
    for f in mors:
        report.expect("naturality",
                      D.compose(theta.at(C.tgt(f)), P.on_mor(f)),
                      D.compose(Q.on_mor(f), theta.at(C.src(f))), (f,))
    report.expect("unity",
                  D.compose(theta.at(C.unit), P.unit_constraint()),
                  Q.unit_constraint(), "unit")
    for x, y in itertools.product(objs, repeat=2):
        lhs = D.compose(theta.at(C.sum_obj(x, y)), P.monoidal(x, y))
        rhs = D.compose(Q.monoidal(x, y), D.sum_mor(theta.at(x), theta.at(y)))
        report.expect("constraint-compatibility", lhs, rhs, (x, y))
    return report


def replace_at(tup: tuple, j: int, value) -> tuple:
    """The tuple with slot ``j`` (1-indexed) replaced."""
    return tup[:j - 1] + (value,) + tup[j:]


@dataclass(frozen=True)
class NLinearFunctor:
    """A functor out of a product of permutative categories with one
    linearity constraint per variable.

    ``constraints`` is keyed/called as ``(j, X, Xj2)``: the component

        P(X) + P(X with slot j replaced by Xj2) -> P(X with Xj + Xj2 at j).

    ``None`` means identity components.  A 0-linear functor is a bare
    object choice: ``sources = ()`` and ``obj_map`` defined on ``()``.
    """

    sources: tuple
    target: object
    obj_map: Mapping | Callable
    mor_map: Mapping | Callable
    constraints: Mapping | Callable | None = None
    strict: bool = False
    strong: bool = False

    @property
    def arity(self) -> int:
        return len(self.sources)

    def on_obj(self, X: tuple):
        return _apply(self.obj_map, tuple(X))

    def on_mor(self, fs: tuple):
        return _apply(self.mor_map, tuple(fs))

    def constraint(self, j: int, X: tuple, Xj2):
        if self.constraints is None:
            D = self.target
            return D.identity(D.sum_obj(self.on_obj(X), self.on_obj(replace_at(X, j, Xj2))))
        if isinstance(self.constraints, Mapping):
            return self.constraints[j, tuple(X), Xj2]
        return self.constraints(j, tuple(X), Xj2)


def nlinear_from_smf(P: SymMonFunctor) -> NLinearFunctor:
    """A strictly unital symmetric monoidal functor as a 1-linear functor."""
    return NLinearFunctor((P.source,), P.target,
                          lambda X: P.on_obj(X[0]),
                          lambda fs: P.on_mor(fs[0]),
                          lambda j, X, X2: P.monoidal(X[0], X2),
                          strict=P.strict, strong=P.strong)


def smf_from_nlinear(P: NLinearFunctor) -> SymMonFunctor:
    if P.arity != 1:
        raise ValueError("only 1-linear functors are symmetric monoidal functors")
    return SymMonFunctor(P.sources[0], P.target,
                         lambda x: P.on_obj((x,)),
                         lambda f: P.on_mor((f,)),
                         lambda x, y: P.constraint(1, (x,), y),
                         None,
                         strict=P.strict, strictly_unital=True, strong=P.strong)


def identity_nlinear(C) -> NLinearFunctor:
    return NLinearFunctor((C,), C, lambda X: X[0], lambda fs: fs[0],
                          None, strict=True, strong=True)


def _windows(P: NLinearFunctor, objects) -> list[tuple]:
    if objects is None:
        return [tuple(S.object_list()) for S in P.sources]
    return [tuple(w) for w in objects]


def validate_nlinear(P: NLinearFunctor, objects: Sequence | None = None) -> CheckReport:
    """All five multilinearity axioms, exhaustively over object windows.

    ``objects`` is one window per source category.  Reports the
    strong/strict classification of the constraint components.
    """
    D = P.target
    report = CheckReport("n-linear-functor")
    if P.arity == 0:
        choice = P.on_obj(())
        report.expect("object-choice", D.identity(choice) is not None, True, ("choice", choice))
        report.metadata["classification"] = "strict"
        return report
    wins = _windows(P, objects)
    obj_tuples = list(itertools.product(*wins))
    hom_lists = [[f for x in w for y in w for f in S.hom(x, y)]
                 for S, w in zip(P.sources, wins)]
    mor_tuples = list(itertools.product(*hom_lists))

    for fs in mor_tuples:
        image = P.on_mor(fs)
        report.expect("functor-typing",
                      (D.src(image), D.tgt(image)),
                      (P.on_obj(tuple(S.src(f) for S, f in zip(P.sources, fs))),
                       P.on_obj(tuple(S.tgt(f) for S, f in zip(P.sources, fs)))),
                      ("typing", fs))
    for X in obj_tuples:
        ids = tuple(S.identity(x) for S, x in zip(P.sources, X))
        report.expect("functor-identities", P.on_mor(ids), D.identity(P.on_obj(X)), ("id", X))
    for fs in mor_tuples:
        for gs in mor_tuples:
            if any(S.src(g) != S.tgt(f) for S, f, g in zip(P.sources, fs, gs)):
                continue
            report.expect("functor-composition",
                          P.on_mor(tuple(S.compose(g, f) for S, f, g in zip(P.sources, fs, gs))),
                          D.compose(P.on_mor(gs), P.on_mor(fs)), (gs, fs))

    all_strict = True
    all_strong = True
    for j in range(1, P.arity + 1):
        Cj = P.sources[j - 1]
        for X in obj_tuples:
            report.expect("unity", P.on_obj(replace_at(X, j, Cj.unit)), D.unit, ("object", j, X))
        for fs in mor_tuples:
            unit_id = Cj.identity(Cj.unit)
            report.expect("unity",
                          P.on_mor(replace_at(fs, j, unit_id)),
                          D.identity(D.unit), ("morphism", j, fs))
        for X in obj_tuples:
            for X2 in wins[j - 1]:
                c = P.constraint(j, X, X2)
                if not (c == D.identity(D.src(c))):
                    all_strict = False
                if _is_invertible(D, c) is False:
                    all_strong = False
                report.expect("constraint-typing",
                              (D.src(c), D.tgt(c)),
                              (D.sum_obj(P.on_obj(X), P.on_obj(replace_at(X, j, X2))),
                               P.on_obj(replace_at(X, j, Cj.sum_obj(X[j - 1], X2)))),
                              ("typing", j, X, X2))
                if any(x == P.sources[i].unit for i, x in enumerate(X)) or X2 == Cj.unit:
                    report.expect("constraint-unity", c, D.identity(D.src(c)), (j, X, X2))
        def guarded(axiom, lhs_fn, rhs_fn, witness):
            try:
                report.expect(axiom, lhs_fn(), rhs_fn(), witness)
            except (ComposabilityError, MalformedStructureError):
                report.count(axiom)
                report.violation(axiom, ("ill-typed",) + witness)

        for fs in mor_tuples:
            for f2 in hom_lists[j - 1]:
                X = tuple(S.src(f) for S, f in zip(P.sources, fs))
                Y = tuple(S.tgt(f) for S, f in zip(P.sources, fs))
                guarded(
                    "constraint-naturality",
                    lambda j=j, fs=fs, f2=f2, Y=Y: D.compose(
                        P.constraint(j, Y, Cj.tgt(f2)),
                        D.sum_mor(P.on_mor(fs), P.on_mor(replace_at(fs, j, f2)))),
                    lambda j=j, fs=fs, f2=f2, X=X: D.compose(
                        P.on_mor(replace_at(fs, j, Cj.sum_mor(fs[j - 1], f2))),
                        P.constraint(j, X, Cj.src(f2))),
                    (j, fs, f2))
        for X in obj_tuples:
            for X2, X3 in itertools.product(wins[j - 1], repeat=2):
                guarded(
                    "constraint-associativity",
                    lambda j=j, X=X, X2=X2, X3=X3: D.compose(
                        P.constraint(j, X, Cj.sum_obj(X2, X3)),
                        D.sum_mor(D.identity(P.on_obj(X)),
                                  P.constraint(j, replace_at(X, j, X2), X3))),
                    lambda j=j, X=X, X2=X2, X3=X3: D.compose(
                        P.constraint(j, replace_at(X, j, Cj.sum_obj(X[j - 1], X2)), X3),
                        D.sum_mor(P.constraint(j, X, X2),
                                  D.identity(P.on_obj(replace_at(X, j, X3))))),
                    (j, X, X2, X3))
        for X in obj_tuples:
            for X2 in wins[j - 1]:
                swapped = replace_at(X, j, X2)
                guarded(
                    "constraint-symmetry",
                    lambda j=j, X=X, X2=X2: D.compose(
                        P.on_mor(tuple(
                            Cj.xi(X[j - 1], X2) if i == j - 1
                            else P.sources[i].identity(X[i])
                            for i in range(P.arity))),
                        P.constraint(j, X, X2)),
                    lambda j=j, X=X, X2=X2, swapped=swapped: D.compose(
                        P.constraint(j, swapped, X[j - 1]),
                        D.xi(P.on_obj(X), P.on_obj(swapped))),
                    (j, X, X2))
    for j, k in itertools.permutations(range(1, P.arity + 1), 2):
        Cj, Ck = P.sources[j - 1], P.sources[k - 1]
        for X in obj_tuples:
            for X2 in wins[j - 1]:
                for X4 in wins[k - 1]:
                    Xj2 = replace_at(X, j, X2)
                    Xk4 = replace_at(X, k, X4)
                    Xboth = replace_at(Xj2, k, X4)

                    def path1(j=j, k=k, X=X, X2=X2, X4=X4, Xk4=Xk4):
                        jsum = replace_at(X, j, Cj.sum_obj(X[j - 1], X2))
                        return D.compose(
                            P.constraint(k, jsum, X4),
                            D.sum_mor(P.constraint(j, X, X2),
                                      P.constraint(j, Xk4, X2)))

                    def path2(j=j, k=k, X=X, X2=X2, X4=X4,
                              Xj2=Xj2, Xk4=Xk4, Xboth=Xboth):
                        shuffle = D.sum_mor(
                            D.sum_mor(
                                D.identity(P.on_obj(X)),
                                D.xi(P.on_obj(Xj2), P.on_obj(Xk4))),
                            D.identity(P.on_obj(Xboth)))
                        ksum = replace_at(X, k, Ck.sum_obj(X[k - 1], X4))
                        return D.compose(
                            P.constraint(j, ksum, X2),
                            D.compose(
                                D.sum_mor(P.constraint(k, X, X4),
                                          P.constraint(k, Xj2, X4)),
                                shuffle))

                    try:
                        report.expect("constraint-2x2", path1(), path2(),
                                      (j, k, X, X2, X4))
                    except (ComposabilityError, MalformedStructureError):
                        report.count("constraint-2x2")
                        report.violation("constraint-2x2",
                                         ("ill-typed", j, k, X, X2, X4))

    report.metadata["classification"] = ("strict" if all_strict else
                                         "strong" if all_strong else "lax")
    return report


@dataclass(frozen=True)
class NLinearNat:
    source: NLinearFunctor
    target: NLinearFunctor
    components: Mapping | Callable

    def at(self, X: tuple):
        return _apply(self.components, tuple(X))


def identity_nlinear_nat(P: NLinearFunctor) -> NLinearNat:
    return NLinearNat(P, P, lambda X: P.target.identity(P.on_obj(X)))


def validate_nlinear_nat(theta: NLinearNat, objects: Sequence | None = None) -> CheckReport:
    P, Q = theta.source, theta.target
    D = P.target
    report = CheckReport("n-linear-transformation")
    if P.arity == 0:
        t = theta.at(())
        report.expect("component-typing",
                      (D.src(t), D.tgt(t)), (P.on_obj(()), Q.on_obj(())), "component")
        return report
    wins = _windows(P, objects)
    obj_tuples = list(itertools.product(*wins))
    hom_lists = [[f for x in w for y in w for f in S.hom(x, y)]
                 for S, w in zip(P.sources, wins)]

    for X in obj_tuples:
        t = theta.at(X)
        report.expect("component-typing",
                      (D.src(t), D.tgt(t)), (P.on_obj(X), Q.on_obj(X)), ("component", X))
        if any(x == P.sources[i].unit for i, x in enumerate(X)):
            report.expect("unity", t, D.identity(D.unit), ("unit-component", X))
    for fs in itertools.product(*hom_lists):
        X = tuple(S.src(f) for S, f in zip(P.sources, fs))
        Y = tuple(S.tgt(f) for S, f in zip(P.sources, fs))
        report.expect("naturality",
                      D.compose(theta.at(Y), P.on_mor(fs)),
                      D.compose(Q.on_mor(fs), theta.at(X)), (fs,))
    for j in range(1, P.arity + 1):
        Cj = P.sources[j - 1]
        for X in obj_tuples:
            for X2 in wins[j - 1]:
                lhs = D.compose(theta.at(replace_at(X, j, Cj.sum_obj(X[j - 1], X2))),
                                P.constraint(j, X, X2))
                rhs = D.compose(Q.constraint(j, X, X2),
                                D.sum_mor(theta.at(X), theta.at(replace_at(X, j, X2))))
                report.expect("constraint-compatibility", lhs, rhs, (j, X, X2))
    return report


def sigma_tuple(sigma: Permutation, A: tuple) -> tuple:
    """The tuple whose slot ``sigma(j)`` holds ``A_j``."""
    out = [None] * len(A)
    for j, a in enumerate(A, start=1):
        out[sigma(j) - 1] = a
    return tuple(out)


def nlinear_sigma_act(P: NLinearFunctor, sigma: Permutation) -> NLinearFunctor:
    """The right symmetric group action: precompose with the product
    shuffle; the j-th constraint is the sigma(j)-th of ``P`` reindexed."""
    if sigma.degree != P.arity:
        raise ComposabilityError(f"degree {sigma.degree} on arity {P.arity}")
    sources = perm_act(sigma, P.sources)

    def constraint(j, A, A2):
        return P.constraint(sigma(j), sigma_tuple(sigma, A), A2)

    return NLinearFunctor(sources, P.target,
                          lambda A: P.on_obj(sigma_tuple(sigma, A)),
                          lambda fs: P.on_mor(sigma_tuple(sigma, fs)),
                          constraint, strict=P.strict, strong=P.strong)


def _chunks(W: tuple, arities: Sequence[int]) -> list[tuple]:
    out = []
    pos = 0
    for k in arities:
        out.append(tuple(W[pos:pos + k]))
        pos += k
    return out


def nlinear_gamma(P: NLinearFunctor, Ps: Sequence[NLinearFunctor]) -> NLinearFunctor:
    """Multicategorical composition of multilinear functors."""
    Ps = tuple(Ps)
    if len(Ps) != P.arity:
        raise ComposabilityError(f"{len(Ps)} inner functors for arity {P.arity}")
    arities = [Q.arity for Q in Ps]
    sources = tuple(S for Q in Ps for S in Q.sources)
    D = P.target

    def on_obj(W):
        return P.on_obj(tuple(Q.on_obj(c) for Q, c in zip(Ps, _chunks(W, arities))))

    def on_mor(fs):
        return P.on_mor(tuple(Q.on_mor(c) for Q, c in zip(Ps, _chunks(fs, arities))))

    def locate(ell):
        pos = 0
        for j, Q in enumerate(Ps, start=1):
            if ell <= pos + Q.arity:
                return j, ell - pos
            pos += Q.arity
        raise ValueError(f"slot {ell} out of range")

    def constraint(ell, W, W2):
        j, i = locate(ell)
        Q = Ps[j - 1]
        chunks = _chunks(W, arities)
        PW = tuple(Qq.on_obj(c) for Qq, c in zip(Ps, chunks))
        inner = Q.constraint(i, chunks[j - 1], W2)
        outer = P.constraint(j, PW, Q.on_obj(replace_at(chunks[j - 1], i, W2)))
        whisker = P.on_mor(tuple(
            inner if a == j - 1 else P.sources[a].identity(PW[a])
            for a in range(P.arity)))
        return D.compose(whisker, outer)

    return NLinearFunctor(sources, D, on_obj, on_mor,
                          None if all(Q.constraints is None for Q in Ps)
                          and P.constraints is None else constraint,
                          strict=P.strict and all(Q.strict for Q in Ps),
                          strong=P.strong and all(Q.strong for Q in Ps))


def nlinear_gamma_nat(theta: NLinearNat, thetas: Sequence[NLinearNat]) -> NLinearNat:
    """Composite transformation: whisker the inner components, then the
    outer component at the inner targets."""
    thetas = tuple(thetas)
    P, Ps = theta.source, tuple(t.source for t in thetas)
    Q, Qs = theta.target, tuple(t.target for t in thetas)
    arities = [q.arity for q in Ps]
    D = P.target

    def component(W):
        chunks = _chunks(W, arities)
        first = P.on_mor(tuple(t.at(c) for t, c in zip(thetas, chunks)))
        second = theta.at(tuple(q.on_obj(c) for q, c in zip(Qs, chunks)))
        return D.compose(second, first)

    return NLinearNat(nlinear_gamma(P, Ps), nlinear_gamma(Q, Qs), component)
