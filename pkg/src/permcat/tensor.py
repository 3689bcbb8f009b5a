"""The decomposable fragment of the tensor product of multicategories.

Operations of the fragment are kept in normal form: a tuple of one
component operation per factor together with a twist permutation on the
flat input grid.  Every relation the construction needs (functoriality of
the iterated tensor, interchange) is oriented into that normal form at
construction time; equality goes through a canonical key (see
:class:`DecompOp`) that quotients the identifications the relations
force on normal forms.  Composition outside the grid-aligned fragment
raises :class:`UnsupportedFragmentError` rather than attempting the
general word problem.

The comparison functor ``S`` from a product of free categories into the
free category on the fragment lives here, together with its linearity
constraints and the induced multilinear package of a multifunctor on a
grid source.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ComposabilityError, UnsupportedFragmentError
from .free import FreeMorphism, FreePermCat, free_identity
from .multicat import Multicat, Multifunctor, MultiNat, initial_operad
from .permcats import NLinearFunctor, NLinearNat
from .perms import (
    FinMap,
    Permutation,
    Profile,
    all_perms,
    block_perm,
    block_sum,
    grid_indices,
    grid_rank,
    grid_transpose,
    grid_unrank,
    identity_perm,
    perm_act,
    perm_compose,
    perm_grid_product,
    product_map,
    profiles,
    sigma_kgf,
    terminal_map,
)


@dataclass(frozen=True)
class DecompOp:
    """A decomposable operation ``(tensor of components) . twist``.

    Equality and hashing go through ``key``, the canonical form of the
    operation; the true components and twist are retained for
    composition.  Two collapses of the tensor relations make the raw pair
    too fine:

    - gauge: sliding a symmetric-group action across the tensor,
      ``(tensor of (c_i . s_i)) = (tensor of c_i) . gridproduct(s)``, so
      the key minimizes over all per-factor actions;
    - arity zero: tensoring against a nullary operation forgets the other
      factors except their outputs, and a second nullary anywhere (or a
      nullary elsewhere with the right output) mediates away even the
      first, so the key keeps only what survives.
    """

    components: tuple = field(compare=False)
    twist: Permutation = field(compare=False)
    key: tuple = field(compare=True)


def grid_object(factor_profiles: tuple) -> Profile:
    """The flat profile of object tuples, first factor index fastest."""
    sizes = tuple(len(p) for p in factor_profiles)
    return tuple(tuple(p[j - 1] for p, j in zip(factor_profiles, js))
                 for js in grid_indices(sizes))


def make_decomp(Ms: tuple, components: tuple, twist: Permutation) -> DecompOp:
    """Construct a decomposable operation in canonical form."""
    components = tuple(components)
    nullary = tuple(i for i, (M, c) in enumerate(zip(Ms, components))
                    if M.arity_of(c) == 0)
    if nullary:
        outputs = tuple(M.output_of(c) for M, c in zip(Ms, components))
        with_mediator = [i for i, (M, out) in enumerate(zip(Ms, outputs))
                         if M.ops(out, ())]
        if len(nullary) == 1 and with_mediator == list(nullary):
            i0 = nullary[0]
            key = ("nullary", i0, components[i0], outputs)
        else:
            key = ("nullary-class", outputs)
        return DecompOp(components, twist, key)
    best = None
    for sigmas in itertools.product(*(tuple(all_perms(M.arity_of(c)))
                                      for M, c in zip(Ms, components))):
        comps = tuple(M.act(c, s) for M, c, s in zip(Ms, components, sigmas))
        tw = perm_compose(perm_grid_product(sigmas).inverse(), twist)
        candidate = (tuple(repr(c) for c in comps), tw.images, comps)
        if best is None or candidate[:2] < best[:2]:
            best = candidate
    key = (best[2], best[1])
    return DecompOp(components, twist, key)


def tensor_op(Ms: tuple, ops: tuple) -> DecompOp:
    """The iterated tensor of one operation per factor: identity twist."""
    sizes = tuple(M.arity_of(op) for M, op in zip(Ms, ops))
    total = 1
    for s in sizes:
        total *= s
    return make_decomp(Ms, tuple(ops), identity_perm(total))


def tensor_op_transposed(Ms: tuple, phi, psi) -> DecompOp:
    """The two-factor tensor in the other nesting order; differs from
    :func:`tensor_op` exactly by the grid transpose twist."""
    m, n = Ms[0].arity_of(phi), Ms[1].arity_of(psi)
    return make_decomp(Ms, (phi, psi), grid_transpose(m, n).inverse())


class TensorGridView(Multicat):
    """The grid fragment of an n-fold tensor product, ``n >= 2``."""

    def __init__(self, factors: tuple):
        self.factors = tuple(factors)
        self.name = "tensor(" + ", ".join(getattr(M, "name", "?") for M in factors) + ")"
        self.max_arity = None
        if all(M.objects is not None for M in self.factors):
            self.objects = tuple(itertools.product(*(M.object_list() for M in self.factors)))
        else:
            self.objects = None

    def object_list(self) -> tuple:
        if self.objects is None:
            raise ComposabilityError(f"{self.name}: factor objects not enumerable")
        return self.objects

    def unit(self, obj: tuple) -> DecompOp:
        return make_decomp(self.factors,
                           tuple(M.unit(c) for M, c in zip(self.factors, obj)),
                           identity_perm(1))

    def output_of(self, op: DecompOp) -> tuple:
        return tuple(M.output_of(c) for M, c in zip(self.factors, op.components))

    def profile_of(self, op: DecompOp) -> Profile:
        flat = grid_object(tuple(M.profile_of(c)
                                 for M, c in zip(self.factors, op.components)))
        return perm_act(op.twist, flat)

    def ops(self, target: tuple, profile: Profile) -> tuple:
        out = []
        slot_ops = []
        for M, y in zip(self.factors, target):
            bound = M.max_arity if M.max_arity is not None else len(profile)
            found = []
            for p in profiles(M.object_list(), bound):
                found.extend(M.ops(y, p))
            slot_ops.append(found)
        seen = set()
        for components in itertools.product(*slot_ops):
            arity = 1
            for M, c in zip(self.factors, components):
                arity *= M.arity_of(c)
            if arity != len(profile):
                continue
            flat = grid_object(tuple(M.profile_of(c)
                                     for M, c in zip(self.factors, components)))
            for twist in all_perms(arity):
                if perm_act(twist, flat) == tuple(profile):
                    op = make_decomp(self.factors, components, twist)
                    if op.key not in seen:
                        seen.add(op.key)
                        out.append(op)
        return tuple(out)

    def act(self, op: DecompOp, sigma: Permutation) -> DecompOp:
        if sigma.degree != self.arity_of(op):
            raise ComposabilityError(
                f"degree {sigma.degree} action on arity {self.arity_of(op)}")
        return make_decomp(self.factors, op.components,
                           perm_compose(op.twist, sigma))

    def compose(self, outer: DecompOp, inners: tuple) -> DecompOp:
        inners = tuple(inners)
        if len(inners) != self.arity_of(outer):
            raise ComposabilityError(
                f"{len(inners)} inner operations for arity {self.arity_of(outer)}")
        for slot, inner in zip(self.profile_of(outer), inners):
            if self.output_of(inner) != slot:
                raise ComposabilityError(
                    f"inner output {self.output_of(inner)!r} != {slot!r}")
        if not inners:
            return outer

        # untwist the outer: slot m of the tensor core receives the inner
        # sitting at the twisted position
        inv = outer.twist.inverse()
        slot_inners = tuple(inners[inv(m) - 1] for m in range(1, len(inners) + 1))
        sizes = tuple(M.arity_of(c) for M, c in zip(self.factors, outer.components))

        # grid alignment: the untwisted slots must factor through
        # per-factor families of component operations
        families: list[list] = [[None] * s for s in sizes]
        for m, inner in enumerate(slot_inners, start=1):
            ls = grid_unrank(m, sizes)
            for i, l in enumerate(ls):
                candidate = inner.components[i]
                if families[i][l - 1] is None:
                    families[i][l - 1] = candidate
                elif families[i][l - 1] != candidate:
                    raise UnsupportedFragmentError(
                        "inner operations are not grid-aligned: factor "
                        f"{i + 1} differs across the grid")

        composed = tuple(
            M.compose(c, tuple(family))
            for M, c, family in zip(self.factors, outer.components, families))

        # reassemble the twist: per-factor fiber alignment, then the inner
        # twists blockwise, then the outer block permutation
        block_maps = []
        for i, family in enumerate(families):
            arities = [self.factors[i].arity_of(f) for f in family]
            images = tuple(j for j, k in enumerate(arities, start=1) for _ in range(k))
            block_maps.append(FinMap(sum(arities), len(family), images))
        f_all = product_map(tuple(block_maps))
        alignment = sigma_kgf(f_all, terminal_map(f_all.codomain), 1).inverse()
        inner_twists = block_sum(tuple(op.twist for op in slot_inners))
        outer_block = block_perm(outer.twist,
                                 tuple(self.arity_of(op) for op in slot_inners))
        twist = perm_compose(perm_compose(alignment, inner_twists), outer_block)
        return make_decomp(self.factors, composed, twist)


def tensor_grid(Ms: tuple) -> Multicat:
    """The tensor product restricted to the fragment this package models:
    the empty tensor is the initial operad, a single factor is itself."""
    Ms = tuple(Ms)
    if len(Ms) == 0:
        return initial_operad()
    if len(Ms) == 1:
        return Ms[0]
    return TensorGridView(Ms)


def tensor_of_multifunctors(Hs: tuple) -> Multifunctor:
    """The tensor of multifunctors on grid fragments (componentwise on
    normal forms, twist kept)."""
    Hs = tuple(Hs)
    source = tensor_grid(tuple(H.source for H in Hs))
    target = tensor_grid(tuple(H.target for H in Hs))
    if len(Hs) == 1:
        return Hs[0]

    def on_obj(obj):
        return tuple(H.on_obj(c) for H, c in zip(Hs, obj))

    factors = tuple(H.target for H in Hs)

    def on_op(op: DecompOp) -> DecompOp:
        return make_decomp(factors,
                           tuple(H.on_op(c) for H, c in zip(Hs, op.components)),
                           op.twist)

    return Multifunctor(source, target, on_obj, on_op)


def tensor_of_multinats(thetas: tuple) -> MultiNat:
    """Componentwise tensor of multinatural transformations."""
    thetas = tuple(thetas)
    if len(thetas) == 1:
        return thetas[0]
    source = tensor_of_multifunctors(tuple(t.source for t in thetas))
    target = tensor_of_multifunctors(tuple(t.target for t in thetas))

    factors = tuple(t.source.target for t in thetas)

    def component(obj):
        comps = tuple(t.at(c) for t, c in zip(thetas, obj))
        return make_decomp(factors, comps, identity_perm(1))

    return MultiNat(source, target, component)


def braid_multifunctor(M1: Multicat, M2: Multicat) -> Multifunctor:
    """The symmetry of the two-factor tensor, oriented
    ``M2 (x) M1 -> M1 (x) M2`` on normal forms."""
    source = tensor_grid((M2, M1))
    target = tensor_grid((M1, M2))

    def on_op(op: DecompOp) -> DecompOp:
        psi, phi = op.components
        transpose = grid_transpose(M1.arity_of(phi), M2.arity_of(psi))
        return make_decomp((M1, M2), (phi, psi),
                           perm_compose(transpose.inverse(), op.twist))

    return Multifunctor(source, target,
                        lambda obj: (obj[1], obj[0]), on_op)


def s_object(Ms: tuple, xs: tuple) -> Profile:
    """The image object: empty tensor gives the empty profile, one factor
    is the identity, otherwise the flat grid of tuples."""
    if len(Ms) == 0:
        return ()
    if len(Ms) == 1:
        return tuple(xs[0])
    return grid_object(tuple(tuple(x) for x in xs))


def s_morphism(Ms: tuple, mors: tuple) -> FreeMorphism:
    """The image morphism: the product index map with the iterated tensor
    of the fiber operations (identity twists) as entries."""
    if len(Ms) == 0:
        return free_identity(initial_operad(), ())
    if len(Ms) == 1:
        return mors[0]
    index = product_map(tuple(m.index_map for m in mors))
    targets = tuple(tuple(m.target) for m in mors)
    t_sizes = tuple(len(t) for t in targets)
    ops = tuple(
        tensor_op(Ms, tuple(m.ops[k - 1] for m, k in zip(mors, ks)))
        for ks in grid_indices(t_sizes))
    return FreeMorphism(s_object(Ms, tuple(m.source for m in mors)),
                        s_object(Ms, targets), index, ops)


def s_constraint_map(b: int, sizes: tuple, hat_b: int) -> FinMap:
    """The positional shuffle sending the concatenation of two grids to
    the grid with factor ``b`` enlarged."""
    n = len(sizes)
    first = 1
    for s in sizes:
        first *= s
    hat_sizes = sizes[:b - 1] + (hat_b,) + sizes[b:]
    second = 1
    for s in hat_sizes:
        second *= s
    merged = sizes[:b - 1] + (sizes[b - 1] + hat_b,) + sizes[b:]
    images = []
    for p in range(1, first + 1):
        js = grid_unrank(p, sizes)
        images.append(grid_rank(js, merged))
    for p in range(1, second + 1):
        js = grid_unrank(p, hat_sizes)
        shifted = js[:b - 1] + (js[b - 1] + sizes[b - 1],) + js[b:]
        images.append(grid_rank(shifted, merged))
    return FinMap(first + second, first + second, tuple(images))


def s_constraint(Ms: tuple, b: int, xs: tuple, hat_xb: tuple) -> FreeMorphism:
    """The b-th linearity constraint of ``S``: a permutation of entries
    with unit operations, determined positionally by source and target."""
    n = len(Ms)
    if not 1 <= b <= n:
        raise ValueError(f"factor index {b} out of range 1..{n}")
    grid = tensor_grid(Ms)
    if n == 1:
        merged = tuple(xs[0]) + tuple(hat_xb)
        return free_identity(Ms[0], merged)
    sizes = tuple(len(x) for x in xs)
    rho = s_constraint_map(b, sizes, len(hat_xb))
    merged_xs = tuple(tuple(x) if i != b - 1 else tuple(xs[b - 1]) + tuple(hat_xb)
                      for i, x in enumerate(xs))
    source = (s_object(Ms, xs)
              + s_object(Ms, tuple(tuple(x) if i != b - 1 else tuple(hat_xb)
                                   for i, x in enumerate(xs))))
    target = s_object(Ms, merged_xs)
    ops = tuple(grid.unit(obj) for obj in target)
    return FreeMorphism(source, target, rho, ops)


def s_functor(Ms: tuple) -> NLinearFunctor:
    """``S`` packaged as a strong multilinear functor between the free
    category views."""
    Ms = tuple(Ms)
    sources = tuple(FreePermCat(M) for M in Ms)
    target = FreePermCat(tensor_grid(Ms))
    if len(Ms) == 0:
        return NLinearFunctor((), target, lambda X: (),
                              lambda fs: free_identity(initial_operad(), ()),
                              None, strict=True, strong=True)
    return NLinearFunctor(
        sources, target,
        lambda X: s_object(Ms, X),
        lambda fs: s_morphism(Ms, fs),
        lambda b, X, X2: s_constraint(Ms, b, X, X2),
        strict=len(Ms) == 1, strong=True)


def f_multi(H: Multifunctor, Ms: tuple) -> NLinearFunctor:
    """The multilinear package of a multifunctor on a grid source:
    entrywise application after ``S``."""
    Ms = tuple(Ms)
    FN = FreePermCat(H.target)
    sources = tuple(FreePermCat(M) for M in Ms)
    if len(Ms) == 0:
        return NLinearFunctor((), FN, lambda X: (),
                              lambda fs: free_identity(H.target, ()),
                              None, strict=True, strong=True)

    def on_obj(X):
        return tuple(H.on_obj(cell) for cell in s_object(Ms, X))

    def on_mor(fs):
        image = s_morphism(Ms, fs)
        return FreeMorphism(on_obj(tuple(m.source for m in fs)),
                            on_obj(tuple(m.target for m in fs)),
                            image.index_map,
                            tuple(H.on_op(op) for op in image.ops))

    def constraint(b, X, X2):
        base = s_constraint(Ms, b, X, X2)
        return FreeMorphism(tuple(H.on_obj(c) for c in base.source),
                            tuple(H.on_obj(c) for c in base.target),
                            base.index_map,
                            tuple(H.on_op(op) for op in base.ops))

    return NLinearFunctor(sources, FN, on_obj, on_mor, constraint,
                          strict=False, strong=True)


def f_multi_nat(theta: MultiNat, Ms: tuple) -> NLinearNat:
    """The multilinear transformation of a multinatural transformation on
    a grid source: identity index maps with entrywise components."""
    Ms = tuple(Ms)
    P = f_multi(theta.source, Ms)
    Q = f_multi(theta.target, Ms)

    def component(X):
        cells = s_object(Ms, X)
        return FreeMorphism(P.on_obj(X), Q.on_obj(X),
                            FinMap(len(cells), len(cells),
                                   tuple(range(1, len(cells) + 1))),
                            tuple(theta.at(cell) for cell in cells))

    return NLinearNat(P, Q, component)
