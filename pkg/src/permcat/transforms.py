"""Comparison transformations between the free and endomorphism
constructions, the marking construction, and their executable checks.

The unit inserts an operation as a one-output free morphism; the other
comparison sends a free morphism over an endomorphism multicategory back
to the underlying category, sorting inputs into fiber order first.  Their
triangle identities hold on the nose and are checked exhaustively at desk
scale; the non-naturality of the counit against a bilinear functor with a
nonidentity linearity constraint is realized as a concrete finite witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .endo import EndoOp, endo_action, endo_multicat, endo_on_functor
from .fixtures import NEG, POS, sign_multiplication
from .free import FreeMorphism, FreePermCat, free_on_multifunctor
from .multicat import Multicat, Multifunctor, validate_multifunctor
from .permcats import (
    FinPermCat,
    NLinearFunctor,
    SymMonFunctor,
    perm_to_morphism,
    sum_mors,
    sum_objs,
)
from .perms import (
    FinMap,
    Permutation,
    Profile,
    identity_map,
    profiles,
    sigma_kgf,
    terminal_map,
)
from .reports import CheckReport
from .tensor import f_multi, tensor_grid, tensor_op


def eta(M: Multicat) -> Multifunctor:
    """The unit: an object becomes its length-1 sequence, an operation the
    free morphism collapsing all inputs to one output position."""
    E = endo_multicat(FreePermCat(M))

    def on_op(op) -> EndoOp:
        profile = M.profile_of(op)
        y = M.output_of(op)
        mor = FreeMorphism(tuple(profile), (y,), terminal_map(len(profile)), (op,))
        return EndoOp((y,), tuple((x,) for x in profile), mor)

    return Multifunctor(M, E, lambda w: (w,), on_op)


def xi_f(f: FinMap) -> Permutation:
    """The fiber-order sort: the inverse of the positional permutation
    aligning fiberwise concatenation with the identity collapse."""
    return sigma_kgf(f, terminal_map(f.codomain), 1).inverse()


def rho(C) -> SymMonFunctor:
    """The inclusion of length-1 tuples; unit and monoidal constraints are
    collapse morphisms, so this is not strictly unital."""
    FE = FreePermCat(endo_multicat(C))

    def on_mor(f):
        return FreeMorphism((C.src(f),), (C.tgt(f),), identity_map(1),
                            (EndoOp(C.tgt(f), (C.src(f),), f),))

    def m2(x, y):
        s = C.sum_obj(x, y)
        return FreeMorphism((x, y), (s,), terminal_map(2),
                            (EndoOp(s, (x, y), C.identity(s)),))

    m0 = FreeMorphism((), (C.unit,), terminal_map(0),
                      (EndoOp(C.unit, (), C.identity(C.unit)),))
    return SymMonFunctor(C, FE, lambda x: (x,), on_mor, m2, m0)


def epsilon(C) -> SymMonFunctor:
    """The strict evaluation: sum the entries; a free morphism becomes the
    sum of its fiber operations after the fiber-order sort."""
    FE = FreePermCat(endo_multicat(C))

    def on_obj(x: Profile):
        return sum_objs(C, x)

    def on_mor(mor: FreeMorphism):
        sort = perm_to_morphism(C, xi_f(mor.index_map), mor.source)
        pasted = sum_mors(C, [op.mor for op in mor.ops])
        return C.compose(pasted, sort)

    return SymMonFunctor(FE, C, on_obj, on_mor, None, None,
                         strict=True, strictly_unital=True, strong=True)


def check_eta_multifunctor(M: Multicat, max_arity: int) -> CheckReport:
    return validate_multifunctor(eta(M), max_arity=max_arity)


def check_eta_square(H: Multifunctor, Ms: tuple, max_arity: int = 2) -> CheckReport:
    """The multinaturality square of the unit against a multifunctor on a
    grid source: inserting after applying ``H`` agrees with the action of
    the induced multilinear functor on the inserted operations."""
    Ms = tuple(Ms)
    N = H.target
    eta_N = eta(N)
    etas = tuple(eta(M) for M in Ms)
    P = f_multi(H, Ms)
    report = CheckReport("eta-multinaturality")
    per_factor = []
    for M in Ms:
        ops = []
        for target in M.object_list():
            for profile in profiles(M.object_list(), max_arity):
                ops.extend(M.ops(target, profile))
        per_factor.append(ops)
    for combo in itertools.product(*per_factor):
        cell = combo[0] if len(Ms) == 1 else tensor_op(Ms, combo)
        lhs = eta_N.on_op(H.on_op(cell))
        rhs = endo_action(P, tuple(e.on_op(op) for e, op in zip(etas, combo)))
        report.expect("eta-square", lhs, rhs, tuple(repr(op) for op in combo))
    return report


def check_triangles(M: Multicat, C, max_len: int = 3, max_arity: int = 3,
                    counit=None) -> CheckReport:
    """Both triangle identities, exhaustively over windows.

    ``counit`` lets tests substitute a perturbed evaluation; the default
    is :func:`epsilon`.
    """
    report = CheckReport("triangle-identities")
    FM = FreePermCat(M, partial_homs=True)
    eps_FM = (counit or epsilon)(FM)
    F_eta = free_on_multifunctor(eta(M))
    window = FM.enumerate_objects(max_len)
    for x in window:
        report.expect("counit-after-free-unit",
                      eps_FM.on_obj(F_eta.on_obj(x)), x, ("object", x))
    for x in window:
        for y in window:
            for mor in FM.hom(x, y):
                report.expect("counit-after-free-unit",
                              eps_FM.on_mor(F_eta.on_mor(mor)), mor, ("morphism", mor))

    E = endo_multicat(C)
    eps_C = (counit or epsilon)(C)
    E_eps = endo_on_functor(eps_C)
    eta_E = eta(E)
    for target in C.object_list():
        for profile in profiles(C.object_list(), max_arity):
            for op in E.ops(target, profile):
                report.expect("endo-unit-after-unit",
                              E_eps.on_op(eta_E.on_op(op)), op, ("operation", op))

    for x in C.object_list():
        report.expect("counit-after-rho", eps_C.on_obj(rho(C).on_obj(x)), x, ("object", x))
        for y in C.object_list():
            for f in C.hom(x, y):
                report.expect("counit-after-rho",
                              eps_C.on_mor(rho(C).on_mor(f)), f, ("morphism", f))
    return report


def decomposable_endo_multifunctor(P: NLinearFunctor) -> Multifunctor:
    """The action of a multilinear functor packaged as a multifunctor on
    the grid fragment of the endomorphism multicategories."""
    Es = tuple(endo_multicat(S) for S in P.sources)
    grid = tensor_grid(Es)
    ED = endo_multicat(P.target)

    def on_op(op):
        if len(Es) == 1:
            return endo_action(P, (op,))
        base = endo_action(P, op.components)
        return ED.act(base, op.twist)

    def on_obj(obj):
        if len(Es) == 1:
            return P.on_obj((obj,))
        return P.on_obj(obj)

    return Multifunctor(grid, ED, on_obj, on_op)


@dataclass
class CounterexampleWitness:
    functor: NLinearFunctor
    inputs: tuple
    direct: object       # P after the counits
    through_free: object  # the counit after the induced functor
    commutes: bool


def _epsilon_square_paths(P: NLinearFunctor, mors: tuple):
    Ds = P.sources
    D = P.target
    eps = tuple(epsilon(S) for S in Ds)
    direct = P.on_mor(tuple(e.on_mor(m) for e, m in zip(eps, mors)))
    FEP = f_multi(decomposable_endo_multifunctor(P),
                  tuple(endo_multicat(S) for S in Ds))
    through = epsilon(D).on_mor(FEP.on_mor(mors))
    return direct, through


def epsilon_counterexample(max_len: int = 2) -> CounterexampleWitness:
    """A bilinear functor with a nonidentity linearity constraint and a
    concrete input where the counit's naturality square fails.

    The search is over the sign category's multiplication functor and
    small free morphisms; a witness must exist whenever some linearity
    constraint is not an identity, so exhausting the window without one
    raises."""
    P = sign_multiplication(NEG, POS)
    C = P.sources[0]
    FE = FreePermCat(endo_multicat(C))
    window = FE.enumerate_objects(max_len)
    mors = [m for x in window for y in window for m in FE.hom(x, y)]
    for m1, m2 in itertools.product(mors, repeat=2):
        direct, through = _epsilon_square_paths(P, (m1, m2))
        if direct != through:
            return CounterexampleWitness(P, (m1, m2), direct, through, False)
    raise AssertionError("no witness found: the counit square commuted "
                         "on the whole window")


def check_epsilon_square_strict(max_len: int = 2) -> CheckReport:
    """The anti-witness: for the strict variant of the same bilinear
    functor the square commutes on the whole window."""
    P = sign_multiplication(POS, POS)
    C = P.sources[0]
    FE = FreePermCat(endo_multicat(C))
    window = FE.enumerate_objects(max_len)
    mors = [m for x in window for y in window for m in FE.hom(x, y)]
    report = CheckReport("counit-naturality-strict")
    for m1, m2 in itertools.product(mors, repeat=2):
        direct, through = _epsilon_square_paths(P, (m1, m2))
        report.expect("square", direct, through, (m1, m2))
    return report


@dataclass(frozen=True)
class MarkedPermCat:
    """A permutative category with a freshly adjoined strict unit and the
    connecting morphism, plus the comparison functors."""

    category: FinPermCat
    zero: str
    t: str
    collapse: SymMonFunctor     # marked -> base, t to the unit identity
    inclusion: SymMonFunctor    # base -> marked, unit constraint t


def _fresh(label: str, taken) -> str:
    candidate = label
    while candidate in taken:
        candidate = candidate + "'"
    return candidate


def mark_category(C: FinPermCat) -> MarkedPermCat:
    zero = _fresh("mark:0", C.objects)
    id0 = _fresh("mark:id0", C.morphisms())
    e = C.unit

    def marked(f):
        return f"mark:t;{f}"

    objects = C.objects + (zero,)
    mor_src = dict(C.mor_src)
    mor_tgt = dict(C.mor_tgt)
    mor_src[id0] = zero
    mor_tgt[id0] = zero
    t_mors = {}
    for f in C.morphisms():
        if C.src(f) == e:
            t_mors[f] = marked(f)
            mor_src[marked(f)] = zero
            mor_tgt[marked(f)] = C.tgt(f)
    identities = dict(C.identities)
    identities[zero] = id0

    composition = dict(C.composition)
    composition[id0, id0] = id0
    for f, tf in t_mors.items():
        composition[tf, id0] = tf
        for g in C.morphisms():
            if C.src(g) == C.tgt(f):
                composition[g, tf] = t_mors[C.compose(g, f)]

    sums = dict(C.sums)
    for x in objects:
        sums[zero, x] = x
        sums[x, zero] = x
    sums[zero, zero] = zero

    mor_sums = dict(C.mor_sums)
    all_marked = list(t_mors.values())
    for m in list(C.morphisms()) + all_marked + [id0]:
        mor_sums[id0, m] = m
        mor_sums[m, id0] = m
    for f, tf in t_mors.items():
        for g, tg in t_mors.items():
            mor_sums[tf, tg] = t_mors[C.sum_mor(f, g)]
        for h in C.morphisms():
            mor_sums[tf, h] = C.sum_mor(f, h)
            mor_sums[h, tf] = C.sum_mor(h, f)

    symmetries = dict(C.symmetries)
    for x in C.objects:
        symmetries[zero, x] = C.identity(x)
        symmetries[x, zero] = C.identity(x)
    symmetries[zero, zero] = id0

    marked_cat = FinPermCat(f"marked({C.name})", objects, mor_src, mor_tgt,
                            identities, composition, zero, sums, mor_sums,
                            symmetries)

    t = t_mors[C.identity(e)]
    back = {id0: C.identity(e), **{tf: f for f, tf in t_mors.items()}}
    collapse = SymMonFunctor(
        marked_cat, C,
        lambda x: e if x == zero else x,
        lambda f: back.get(f, f),
        None, None, strict=True, strictly_unital=True, strong=True)
    inclusion = SymMonFunctor(
        C, marked_cat, lambda x: x, lambda f: f,
        None, t, strong=False)
    return MarkedPermCat(marked_cat, zero, t, collapse, inclusion)


def mark_functor(P: SymMonFunctor, marked: MarkedPermCat) -> SymMonFunctor:
    """Extend a symmetric monoidal functor to the marking, sending the
    connecting morphism to the unit constraint; strictly unital."""
    C, D = P.source, P.target
    Cm = marked.category

    def on_obj(x):
        return D.unit if x == marked.zero else P.on_obj(x)

    def on_mor(f):
        if f == Cm.identity(marked.zero):
            return D.identity(D.unit)
        base = marked.collapse.on_mor(f)
        if Cm.src(f) == marked.zero:
            return D.compose(P.on_mor(base), P.unit_constraint())
        return P.on_mor(base)

    def m2(x, y):
        if x == marked.zero or y == marked.zero:
            other = y if x == marked.zero else x
            return D.identity(on_obj(other))
        return P.monoidal(x, y)

    return SymMonFunctor(Cm, D, on_obj, on_mor, m2, None,
                         strictly_unital=True,
                         strict=P.strict, strong=P.strong)


def mark_functor_pointed(P: SymMonFunctor, source_mark: MarkedPermCat,
                         target_mark: MarkedPermCat) -> SymMonFunctor:
    """The marked lift of a strictly unital functor, zero to zero and the
    connecting morphism to the connecting morphism."""
    if not P.strictly_unital:
        raise ValueError("the marked lift needs a strictly unital functor")
    Cm, Dm = source_mark.category, target_mark.category
    D = P.target

    def on_obj(x):
        return target_mark.zero if x == source_mark.zero else P.on_obj(x)

    def on_mor(f):
        if f == Cm.identity(source_mark.zero):
            return Dm.identity(target_mark.zero)
        if Cm.src(f) == source_mark.zero:
            base = source_mark.collapse.on_mor(f)     # a morphism e -> x
            image = P.on_mor(base)
            return Dm.compose(image, target_mark.t)
        return P.on_mor(f)

    def m2(x, y):
        if x == source_mark.zero or y == source_mark.zero:
            other = y if x == source_mark.zero else x
            return Dm.identity(on_obj(other))
        return P.monoidal(x, y)

    return SymMonFunctor(Cm, Dm, on_obj, on_mor, m2, None,
                         strictly_unital=True, strict=P.strict, strong=P.strong)


def rho_mark(C, marked: MarkedPermCat) -> SymMonFunctor:
    """The strictly unital replacement of the length-1 inclusion on the
    marking: zero to the empty profile, the connecting morphism to the
    empty-to-unit collapse."""
    base = rho(C)
    FE = base.target
    Cm = marked.category

    def on_obj(x):
        return () if x == marked.zero else base.on_obj(x)

    def on_mor(f):
        if f == Cm.identity(marked.zero):
            return FE.identity(())
        if Cm.src(f) == marked.zero:
            g = marked.collapse.on_mor(f)
            return FreeMorphism((), (C.tgt(g),), terminal_map(0),
                                (EndoOp(C.tgt(g), (), g),))
        return base.on_mor(f)

    def m2(x, y):
        if x == marked.zero or y == marked.zero:
            other = y if x == marked.zero else x
            return FE.identity(on_obj(other))
        return base.monoidal(x, y)

    return SymMonFunctor(Cm, FE, on_obj, on_mor, m2, None, strictly_unital=True)


def check_rho_mark_square(P: SymMonFunctor) -> CheckReport:
    """The zigzag square for a strictly unital functor: the marked lift
    against the induced functor on free endomorphism categories."""
    C, D = P.source, P.target
    mC, mD = mark_category(C), mark_category(D)
    lift = mark_functor_pointed(P, mC, mD)
    FEP = free_on_multifunctor(endo_on_functor(P))
    left = rho_mark(C, mC)
    right = rho_mark(D, mD)
    report = CheckReport("rho-mark-square")
    Cm = mC.category
    for x in Cm.objects:
        report.expect("square-objects",
                      FEP.on_obj(left.on_obj(x)), right.on_obj(lift.on_obj(x)),
                      ("object", x))
    for f in Cm.morphisms():
        report.expect("square-morphisms",
                      FEP.on_mor(left.on_mor(f)), right.on_mor(lift.on_mor(f)),
                      ("morphism", f))
    for x in mC.category.objects:
        report.expect("collapse-square-objects",
                      mD.collapse.on_obj(lift.on_obj(x)),
                      P.on_obj(mC.collapse.on_obj(x)), ("object", x))
    for f in Cm.morphisms():
        report.expect("collapse-square-morphisms",
                      mD.collapse.on_mor(lift.on_mor(f)),
                      P.on_mor(mC.collapse.on_mor(f)), ("morphism", f))
    return report
