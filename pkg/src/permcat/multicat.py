"""Finite multicategories, multifunctors, multinatural transformations.

Two backings share one interface: :class:`FinMulticat` is table-backed and
total up to its arity bound, :class:`MulticatView` computes operation sets,
actions and composition on demand (endomorphism multicategories, tensor
fragments and free-construction homs are views).  Exhaustive validation
works uniformly on both, restricted to a finite object window and arity
bound.

Operation identity is by value: table operations are opaque labels,
view operations are structured values with value equality.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from .errors import (
    BoundExceededError,
    ComposabilityError,
    MalformedStructureError,
    UnsupportedFragmentError,
)
from .perms import (
    Permutation,
    Profile,
    all_perms,
    block_perm,
    block_sum,
    identity_perm,
    perm_act,
    perm_compose,
    profiles,
)
from .reports import CheckReport


class Multicat:
    """Shared interface of table-backed and computed multicategories."""

    max_arity: "int | None"

    def object_list(self) -> tuple:
        raise NotImplementedError

    def ops(self, target, profile: Profile) -> tuple:
        raise NotImplementedError

    def unit(self, obj):
        raise NotImplementedError

    def output_of(self, op):
        raise NotImplementedError

    def profile_of(self, op) -> Profile:
        raise NotImplementedError

    def arity_of(self, op) -> int:
        return len(self.profile_of(op))

    def act(self, op, sigma: Permutation):
        raise NotImplementedError

    def compose(self, outer, inners: tuple):
        raise NotImplementedError

    def check_bound(self, arity: int) -> None:
        if self.max_arity is not None and arity > self.max_arity:
            raise BoundExceededError(f"arity {arity} exceeds bound {self.max_arity}")


@dataclass(frozen=True)
class FinMulticat(Multicat):
    """Arity-truncated multicategory with total lookup tables.

    ``operations`` maps each op label to its ``(output, input profile)``;
    ``sigma`` must be total over all permutations of each op's arity, and
    ``gamma`` total whenever the composite arity is within ``max_arity``.
    """

    name: str
    objects: tuple
    max_arity: int
    operations: Mapping  # op -> (output, profile)
    units: Mapping       # obj -> op
    sigma: Mapping       # (op, perm images) -> op
    gamma: Mapping       # (outer, inners) -> op
    _by_boundary: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self):
        for op, (output, profile) in self.operations.items():
            self._by_boundary.setdefault((output, tuple(profile)), []).append(op)

    def object_list(self) -> tuple:
        return self.objects

    def ops(self, target, profile: Profile) -> tuple:
        return tuple(self._by_boundary.get((target, tuple(profile)), ()))

    def unit(self, obj):
        try:
            return self.units[obj]
        except KeyError:
            raise MalformedStructureError(f"no unit for object {obj!r}")

    def output_of(self, op):
        return self._info(op)[0]

    def profile_of(self, op) -> Profile:
        return self._info(op)[1]

    def _info(self, op):
        try:
            return self.operations[op]
        except KeyError:
            raise MalformedStructureError(f"unknown operation {op!r}")

    def act(self, op, sigma: Permutation):
        if sigma.degree != self.arity_of(op):
            raise ComposabilityError(f"degree {sigma.degree} action on arity {self.arity_of(op)}")
        try:
            return self.sigma[op, sigma.images]
        except KeyError:
            raise MalformedStructureError(f"missing sigma entry ({op!r}, {sigma.images})")

    def compose(self, outer, inners: tuple):
        inners = tuple(inners)
        if len(inners) != self.arity_of(outer):
            raise ComposabilityError(
                f"{len(inners)} inner operations for arity {self.arity_of(outer)}")
        profile = self.profile_of(outer)
        for slot, inner in zip(profile, inners):
            if self.output_of(inner) != slot:
                raise ComposabilityError(f"inner output {self.output_of(inner)!r} != {slot!r}")
        if not inners:
            return outer
        self.check_bound(sum(self.arity_of(i) for i in inners))
        try:
            return self.gamma[outer, inners]
        except KeyError:
            raise MalformedStructureError(f"missing gamma entry ({outer!r}, {inners!r})")


@dataclass(frozen=True)
class MulticatView(Multicat):
    """A multicategory whose tables are computed on demand.

    ``objects`` may be ``None`` when the object class is infinite;
    enumeration then requires an explicit window.
    """

    name: str
    objects: tuple | None
    max_arity: int | None
    ops_fn: Callable
    unit_fn: Callable
    output_fn: Callable
    profile_fn: Callable
    act_fn: Callable
    compose_fn: Callable

    def object_list(self) -> tuple:
        if self.objects is None:
            raise MalformedStructureError(
                f"{self.name}: object class not enumerable, pass an explicit window")
        return self.objects

    def ops(self, target, profile: Profile) -> tuple:
        return tuple(self.ops_fn(target, tuple(profile)))

    def unit(self, obj):
        return self.unit_fn(obj)

    def output_of(self, op):
        return self.output_fn(op)

    def profile_of(self, op) -> Profile:
        return tuple(self.profile_fn(op))

    def act(self, op, sigma: Permutation):
        if sigma.degree != self.arity_of(op):
            raise ComposabilityError(f"degree {sigma.degree} action on arity {self.arity_of(op)}")
        return self.act_fn(op, sigma)

    def compose(self, outer, inners: tuple):
        inners = tuple(inners)
        if len(inners) != self.arity_of(outer):
            raise ComposabilityError(
                f"{len(inners)} inner operations for arity {self.arity_of(outer)}")
        if not inners:
            return outer
        self.check_bound(sum(self.arity_of(i) for i in inners))
        return self.compose_fn(outer, inners)


def materialize(M: Multicat, name: str, objects: Sequence, max_arity: int) -> FinMulticat:
    """Table-backed snapshot of a view over a finite window."""
    operations = {}
    units = {}
    sigma = {}
    gamma = {}
    index = {}
    for target in objects:
        for profile in profiles(objects, max_arity):
            for op in M.ops(target, profile):
                operations[op] = (target, profile)
                index.setdefault((target, profile), []).append(op)
    for obj in objects:
        units[obj] = M.unit(obj)
    for op, (target, profile) in operations.items():
        for perm in all_perms(len(profile)):
            sigma[op, perm.images] = M.act(op, perm)
    for op, (target, profile) in operations.items():
        for inners in _inner_tuples(index, objects, profile, max_arity):
            try:
                gamma[op, inners] = M.compose(op, inners)
            except BoundExceededError:
                pass
    return FinMulticat(name, tuple(objects), max_arity, operations, units, sigma, gamma)


def terminal_multicat(max_arity: int) -> FinMulticat:
    """One object, one n-ary operation for each arity within the bound."""
    obj = "*"
    operations = {f"i{n}": (obj, (obj,) * n) for n in range(max_arity + 1)}
    sigma = {}
    for n in range(max_arity + 1):
        for perm in all_perms(n):
            sigma[f"i{n}", perm.images] = f"i{n}"
    gamma = {}
    for n in range(1, max_arity + 1):
        for ks in itertools.product(range(max_arity + 1), repeat=n):
            if sum(ks) <= max_arity:
                gamma[f"i{n}", tuple(f"i{k}" for k in ks)] = f"i{sum(ks)}"
    return FinMulticat("terminal", (obj,), max_arity,
                       operations, {obj: "i1"}, sigma, gamma)


def initial_operad(max_arity: int = 4) -> FinMulticat:
    """One object whose only operation is the unit."""
    obj = "*"
    operations = {"1": (obj, (obj,))}
    sigma = {("1", (1,)): "1"}
    gamma = {("1", ("1",)): "1"}
    return FinMulticat("initial", (obj,), max_arity,
                       operations, {obj: "1"}, sigma, gamma)


def endo_operad_of_object(M: Multicat, c) -> MulticatView:
    """The one-object operad of all operations of ``M`` with constant
    boundary at ``c``; structure inherited from ``M``."""
    if M.objects is not None and c not in M.object_list():
        raise MalformedStructureError(f"unknown object {c!r}")

    def ops_fn(target, profile):
        if target != c or any(x != c for x in profile):
            return ()
        return M.ops(c, profile)

    return MulticatView(
        name=f"End({c})", objects=(c,), max_arity=M.max_arity,
        ops_fn=ops_fn, unit_fn=lambda obj: M.unit(c),
        output_fn=lambda op: c,
        profile_fn=lambda op: M.profile_of(op),
        act_fn=M.act, compose_fn=M.compose)


@dataclass(frozen=True)
class FinCategory:
    """A finite category presented by tables."""

    objects: tuple
    mor_src: Mapping
    mor_tgt: Mapping
    identities: Mapping      # obj -> morphism
    composition: Mapping     # (g, f) -> g after f

    def morphisms(self) -> tuple:
        return tuple(self.mor_src)

    def hom(self, x, y) -> tuple:
        return tuple(f for f in self.mor_src
                     if self.mor_src[f] == x and self.mor_tgt[f] == y)

    def compose(self, g, f):
        if self.mor_tgt[f] != self.mor_src[g]:
            raise ComposabilityError(f"{f!r} then {g!r}")
        try:
            return self.composition[g, f]
        except KeyError:
            raise MalformedStructureError(f"missing composite ({g!r}, {f!r})")

    def identity(self, x):
        return self.identities[x]


def validate_category(C: FinCategory) -> CheckReport:
    report = CheckReport("category")
    for x in C.objects:
        i = C.identity(x)
        report.expect("identity-typing", (C.mor_src[i], C.mor_tgt[i]), (x, x), ("id", x))
    for f in C.morphisms():
        report.expect("unity", C.compose(C.identity(C.mor_tgt[f]), f), f, ("left", f))
        report.expect("unity", C.compose(f, C.identity(C.mor_src[f])), f, ("right", f))
    for f in C.morphisms():
        for g in C.morphisms():
            if C.mor_src[g] != C.mor_tgt[f]:
                continue
            gf = C.compose(g, f)
            report.expect("composition-typing",
                          (C.mor_src[gf], C.mor_tgt[gf]),
                          (C.mor_src[f], C.mor_tgt[g]), (g, f))
            for h in C.morphisms():
                if C.mor_src[h] != C.mor_tgt[g]:
                    continue
                report.expect("associativity",
                              C.compose(h, gf), C.compose(C.compose(h, g), f), (h, g, f))
    return report


def underlying_category(M: Multicat, objects: Sequence | None = None) -> FinCategory:
    """Objects of ``M`` with the unary operations as morphisms."""
    objs = tuple(objects) if objects is not None else M.object_list()
    mor_src = {}
    mor_tgt = {}
    for y in objs:
        for x in objs:
            for op in M.ops(y, (x,)):
                mor_src[op] = x
                mor_tgt[op] = y
    composition = {}
    for g in mor_src:
        for f in mor_src:
            if mor_tgt[f] == mor_src[g]:
                composition[g, f] = M.compose(g, (f,))
    return FinCategory(objs, mor_src, mor_tgt,
                       {x: M.unit(x) for x in objs}, composition)


@dataclass(frozen=True)
class Multifunctor:
    """An assignment of objects and operations preserving units, actions,
    and composition (validated, not assumed)."""

    source: Multicat
    target: Multicat
    obj_map: Mapping | Callable
    op_map: Mapping | Callable

    def on_obj(self, c):
        return self.obj_map[c] if isinstance(self.obj_map, Mapping) else self.obj_map(c)

    def on_op(self, op):
        return self.op_map[op] if isinstance(self.op_map, Mapping) else self.op_map(op)


def identity_multifunctor(M: Multicat) -> Multifunctor:
    return Multifunctor(M, M, lambda c: c, lambda op: op)


def compose_multifunctors(Q: Multifunctor, P: Multifunctor) -> Multifunctor:
    return Multifunctor(P.source, Q.target,
                        lambda c: Q.on_obj(P.on_obj(c)),
                        lambda op: Q.on_op(P.on_op(op)))


@dataclass(frozen=True)
class MultiNat:
    """Components ``c -> unary operation theta_c`` between two parallel
    multifunctors."""

    source: Multifunctor
    target: Multifunctor
    components: Mapping | Callable

    def at(self, c):
        if isinstance(self.components, Mapping):
            return self.components[c]
        return self.components(c)


def identity_multinat(P: Multifunctor) -> MultiNat:
    return MultiNat(P, P, lambda c: P.target.unit(P.on_obj(c)))


def multinat_vcomp(beta: MultiNat, theta: MultiNat) -> MultiNat:
    """``(beta theta)_c = gamma(beta_c; theta_c)``.

    Boundary agreement (target of ``theta`` = source of ``beta``) is the
    caller's responsibility; function-backed multifunctors cannot be
    compared for equality.
    """
    N = theta.source.target
    return MultiNat(theta.source, beta.target,
                    lambda c: N.compose(beta.at(c), (theta.at(c),)))


def multinat_hcomp(theta2: MultiNat, theta: MultiNat) -> MultiNat:
    """``(theta2 * theta)_c = gamma(theta2_{Qc}; P2(theta_c))`` for
    ``theta: P -> Q`` and ``theta2: P2 -> Q2``."""
    L = theta2.source.target
    Q = theta.target
    P2 = theta2.source

    def component(c):
        return L.compose(theta2.at(Q.on_obj(c)), (P2.on_op(theta.at(c)),))

    return MultiNat(compose_multifunctors(theta2.source, theta.source),
                    compose_multifunctors(theta2.target, theta.target),
                    component)


def _op_index(M: Multicat, objects: Sequence, max_arity: int) -> dict:
    index = {}
    for target in objects:
        for profile in profiles(objects, max_arity):
            found = M.ops(target, profile)
            if found:
                index[target, profile] = tuple(found)
    return index


def _ops_with_output(index: dict, target) -> Iterator[tuple[Profile, object]]:
    for (tgt, profile), ops in index.items():
        if tgt == target:
            for op in ops:
                yield profile, op


def _inner_tuples(index: dict, objects, input_profile: Profile, budget: int) -> Iterator[tuple]:
    """All tuples of operations matching the input profile slotwise, with
    total arity at most ``budget``."""
    if not input_profile:
        yield ()
        return
    head, rest = input_profile[0], input_profile[1:]
    for profile, op in _ops_with_output(index, head):
        remaining = budget - len(profile)
        if remaining < 0:
            continue
        for tail in _inner_tuples(index, objects, rest, remaining):
            yield (op,) + tail


def validate_multicat(M: Multicat, max_arity: int | None = None,
                      objects: Sequence | None = None) -> CheckReport:
    """Exhaustively check the multicategory axioms within the bound.

    Composition instances that a view refuses to evaluate (outside its
    supported fragment) are skipped, not failed; tables are total so
    nothing is skipped for them.
    """
    A = max_arity if max_arity is not None else M.max_arity
    if A is None:
        raise ValueError("an arity bound is required")
    objs = tuple(objects) if objects is not None else M.object_list()
    report = CheckReport(getattr(M, "name", "multicat"))
    index = _op_index(M, objs, A)

    for c in objs:
        u = M.unit(c)
        report.expect("unit-typing", (M.output_of(u), M.profile_of(u)), (c, (c,)), ("unit", c))

    all_ops = [(profile, op) for (target, profile), ops in index.items() for op in ops]

    for profile, op in all_ops:
        n = len(profile)
        report.expect("symmetry-identity", M.act(op, identity_perm(n)), op, ("id-action", op))
        for s in all_perms(n):
            acted = M.act(op, s)
            report.expect("symmetry-typing",
                          (M.output_of(acted), M.profile_of(acted)),
                          (M.output_of(op), perm_act(s, profile)),
                          ("boundary", op, s.images))
            for t in all_perms(n):
                report.expect("symmetry-action",
                              M.act(M.act(op, s), t), M.act(op, perm_compose(s, t)),
                              (op, s.images, t.images))

    for profile, op in all_ops:
        target = M.output_of(op)
        report.expect("left-unity", M.compose(M.unit(target), (op,)), op, ("left", op))
        if profile:
            units = tuple(M.unit(x) for x in profile)
            report.expect("right-unity", M.compose(op, units), op, ("right", op))

    SKIP = object()
    BROKEN = object()

    def try_compose(outer, inners):
        try:
            return M.compose(outer, inners)
        except (NotImplementedError, BoundExceededError, UnsupportedFragmentError):
            return SKIP
        except (ComposabilityError, MalformedStructureError):
            return BROKEN

    composables = []
    for profile, outer in all_ops:
        if not profile:
            continue
        for inners in _inner_tuples(index, objs, profile, A):
            result = try_compose(outer, inners)
            if result is SKIP:
                continue
            if result is BROKEN:
                report.violation("composition-typing", ("untabulated", outer, inners))
                continue
            composables.append((outer, inners, result))
            concat = tuple(x for i in inners for x in M.profile_of(i))
            report.expect("composition-typing",
                          (M.output_of(result), M.profile_of(result)),
                          (M.output_of(outer), concat), (outer, inners))

    def try_act(op, perm):
        try:
            return M.act(op, perm)
        except (ComposabilityError, MalformedStructureError):
            return BROKEN

    for outer, inners, result in composables:
        n = len(inners)
        arities = tuple(M.arity_of(i) for i in inners)
        for s in all_perms(n):
            acted = try_act(outer, s)
            lhs = BROKEN if acted is BROKEN else try_compose(acted, perm_act(s, inners))
            if lhs is SKIP:
                continue
            report.count("top-equivariance")
            rhs = try_act(result, block_perm(s, arities))
            if BROKEN in (lhs, rhs) or lhs != rhs:
                report.violation("top-equivariance", (outer, inners, s.images))
        for taus in itertools.product(*(list(all_perms(k)) for k in arities)):
            lhs = try_compose(outer, tuple(M.act(i, t) for i, t in zip(inners, taus)))
            if lhs is SKIP:
                continue
            report.count("bottom-equivariance")
            rhs = try_act(result, block_sum(taus))
            if BROKEN in (lhs, rhs) or lhs != rhs:
                report.violation("bottom-equivariance",
                                 (outer, inners, tuple(t.images for t in taus)))

    for outer, middles, mid_comp in composables:
        mid_profiles = [M.profile_of(m) for m in middles]
        flat = tuple(x for p in mid_profiles for x in p)
        for inners in _inner_tuples(index, objs, flat, A):
            lhs = try_compose(mid_comp, inners)
            if lhs in (SKIP, BROKEN):
                continue
            split = []
            pos = 0
            for m in middles:
                k = M.arity_of(m)
                split.append(inners[pos:pos + k])
                pos += k
            partial = []
            for m, chunk in zip(middles, split):
                val = try_compose(m, chunk)
                if val in (SKIP, BROKEN):
                    partial = None
                    break
                partial.append(val)
            if partial is None:
                continue
            rhs = try_compose(outer, tuple(partial))
            if rhs in (SKIP, BROKEN):
                continue
            report.expect("associativity", lhs, rhs, (outer, middles, inners))

    return report


def validate_multifunctor(H: Multifunctor, max_arity: int | None = None,
                          objects: Sequence | None = None) -> CheckReport:
    """Check unit, symmetry and composition preservation within the bound."""
    M, N = H.source, H.target
    A = max_arity if max_arity is not None else M.max_arity
    if A is None:
        raise ValueError("an arity bound is required")
    objs = tuple(objects) if objects is not None else M.object_list()
    report = CheckReport("multifunctor")
    index = _op_index(M, objs, A)

    for c in objs:
        report.expect("unit-preservation", H.on_op(M.unit(c)), N.unit(H.on_obj(c)), ("unit", c))

    all_ops = [(profile, op) for (target, profile), ops in index.items() for op in ops]
    for profile, op in all_ops:
        image = H.on_op(op)
        report.expect("boundary-preservation",
                      (N.output_of(image), N.profile_of(image)),
                      (H.on_obj(M.output_of(op)), tuple(H.on_obj(x) for x in profile)),
                      ("boundary", op))
        for s in all_perms(len(profile)):
            report.expect("symmetry-preservation",
                          H.on_op(M.act(op, s)), N.act(image, s), (op, s.images))

    for profile, outer in all_ops:
        if not profile:
            continue
        for inners in _inner_tuples(index, objs, profile, A):
            try:
                composite = M.compose(outer, inners)
                rhs = N.compose(H.on_op(outer), tuple(H.on_op(i) for i in inners))
            except (BoundExceededError, UnsupportedFragmentError):
                continue
            report.expect("composition-preservation", H.on_op(composite), rhs,
                          (outer, inners))
    return report


def validate_multinat(theta: MultiNat, max_arity: int | None = None,
                      objects: Sequence | None = None) -> CheckReport:
    """Check the Set-level naturality square of a multinatural
    transformation on every operation within the bound."""
    P, Q = theta.source, theta.target
    M, N = P.source, P.target
    A = max_arity if max_arity is not None else M.max_arity
    if A is None:
        raise ValueError("an arity bound is required")
    objs = tuple(objects) if objects is not None else M.object_list()
    report = CheckReport("multinat")

    for c in objs:
        comp = theta.at(c)
        report.expect("component-typing",
                      (N.output_of(comp), N.profile_of(comp)),
                      (Q.on_obj(c), (P.on_obj(c),)), ("component", c))

    index = _op_index(M, objs, A)
    for (target, profile), ops in index.items():
        for op in ops:
            try:
                lhs = N.compose(theta.at(target), (P.on_op(op),))
                rhs = N.compose(Q.on_op(op), tuple(theta.at(x) for x in profile))
            except (BoundExceededError, UnsupportedFragmentError):
                continue
            report.expect("naturality", lhs, rhs, ("square", op))
    return report
