"""The grid fragment of the tensor product and the comparison functor S."""
import itertools

import pytest

from permcat.errors import UnsupportedFragmentError
from permcat.fixtures import sign_operad, swap_operad, two_object_multicat
from permcat.free import FreeMorphism, FreePermCat, free_identity, free_on_multifunctor
from permcat.multicat import (
    MultiNat,
    Multifunctor,
    identity_multifunctor,
    terminal_multicat,
    validate_multicat,
    validate_multifunctor,
)
from permcat.permcats import validate_nlinear, validate_nlinear_nat
from permcat.perms import (
    FinMap,
    Permutation,
    grid_transpose,
    identity_perm,
    perm_act,
    profiles,
    terminal_map,
)
from permcat.tensor import (
    braid_multifunctor,
    f_multi,
    f_multi_nat,
    grid_object,
    s_constraint,
    s_constraint_map,
    s_functor,
    s_morphism,
    s_object,
    tensor_grid,
    tensor_of_multifunctors,
    tensor_of_multinats,
    tensor_op,
    tensor_op_transposed,
)

SIGNS2 = sign_operad(2)
SWAP = swap_operad()
TWO = two_object_multicat()
MTERM2 = terminal_multicat(2)


def star(n):
    return ("*",) * n


class TestGridObjects:
    def test_flat_length(self):
        profiles_pair = (("a", "b"), ("x", "y", "z"))
        assert len(grid_object(profiles_pair)) == 6

    def test_entry_rank(self):
        flat = grid_object((("a1", "a2"), ("b1", "b2", "b3")))
        assert flat[1] == ("a2", "b1")     # index (2, 1) sits at rank 2

    def test_single_factor_is_identity_reindexing(self):
        assert s_object((MTERM2,), (star(2),)) == star(2)

    def test_empty_tensor(self):
        assert s_object((), ()) == ()


class TestDecompOps:
    def test_unit_tensor(self):
        view = tensor_grid((SIGNS2, TWO))
        unit = view.unit(("*", "a"))
        assert unit == tensor_op((SIGNS2, TWO), ("+1", "ua"))
        assert unit.components == ("+1", "ua")
        assert unit.twist == identity_perm(1)

    def test_arity_is_product(self):
        op = tensor_op((SIGNS2, TWO), ("+2", "ua"))
        view = tensor_grid((SIGNS2, TWO))
        assert view.arity_of(op) == 2

    def test_interchange_twist(self):
        # phi (x) psi = (phi (x)^T psi) . xi
        view = tensor_grid((SIGNS2, SIGNS2))
        phi, psi = "+2", "-2"
        transposed = tensor_op_transposed((SIGNS2, SIGNS2), phi, psi)
        assert view.act(transposed, grid_transpose(2, 2)) == tensor_op(
            (SIGNS2, SIGNS2), (phi, psi))

    def test_profile_of_twisted_op(self):
        view = tensor_grid((TWO, SIGNS2))
        op = tensor_op((TWO, SIGNS2), ("m", "+1"))
        flat = view.profile_of(op)
        assert flat == (("a", "*"), ("b", "*"))
        swapped = view.act(op, Permutation((2, 1)))
        assert view.profile_of(swapped) == (("b", "*"), ("a", "*"))


class TestGridComposition:
    def test_compose_with_units(self):
        view = tensor_grid((SIGNS2, TWO))
        op = tensor_op((SIGNS2, TWO), ("-2", "ua"))
        units = tuple(view.unit(obj) for obj in view.profile_of(op))
        assert view.compose(op, units) == op
        outer_unit = view.unit(view.output_of(op))
        assert view.compose(outer_unit, (op,)) == op

    def test_one_factor_trivial_reduces_to_single_gamma(self):
        # all second-factor morphisms identities: composition is the
        # first-factor composition with the object carried along
        signs3 = sign_operad(3)
        view = tensor_grid((signs3, TWO))
        outer = tensor_op((signs3, TWO), ("+2", "ua"))
        inner1 = tensor_op((signs3, TWO), ("-1", "ua"))
        inner2 = tensor_op((signs3, TWO), ("-2", "ua"))
        result = view.compose(outer, (inner1, inner2))
        assert result == tensor_op(
            (signs3, TWO), (signs3.compose("+2", ("-1", "-2")), "ua"))

    def test_crossing_reproduces_interchange(self):
        # gamma(phi x d'; <c_i x psi>) lands in the transposed normal form
        view = tensor_grid((SIGNS2, SIGNS2))
        phi, psi = "+2", "-2"
        outer = tensor_op((SIGNS2, SIGNS2), (phi, "+1"))
        inners = tuple(tensor_op((SIGNS2, SIGNS2), ("+1", psi)) for _ in range(2))
        result = view.compose(outer, inners)
        assert result == tensor_op_transposed((SIGNS2, SIGNS2), phi, psi)

    def test_straight_composite_is_normal_form(self):
        # gamma(c' x psi; <phi x d_j>) is the normal form phi (x) psi
        view = tensor_grid((SIGNS2, SIGNS2))
        phi, psi = "+2", "-2"
        outer = tensor_op((SIGNS2, SIGNS2), ("+1", psi))
        inners = tuple(tensor_op((SIGNS2, SIGNS2), (phi, "+1")) for _ in range(2))
        assert view.compose(outer, inners) == tensor_op((SIGNS2, SIGNS2), (phi, psi))

    def test_non_grid_aligned_rejected(self):
        # slots sharing a factor index must carry the same component there
        view = tensor_grid((SIGNS2, SIGNS2))
        outer = tensor_op((SIGNS2, SIGNS2), ("+1", "+2"))
        good = tensor_op((SIGNS2, SIGNS2), ("+1", "+1"))
        bad = tensor_op((SIGNS2, SIGNS2), ("-1", "+1"))
        with pytest.raises(UnsupportedFragmentError):
            view.compose(outer, (good, bad))
        # distinct slots in the same factor may differ: that is aligned
        outer2 = tensor_op((SIGNS2, SIGNS2), ("+2", "+1"))
        assert view.compose(outer2, (good, bad)) == tensor_op(
            (SIGNS2, SIGNS2), ("-2", "+1"))

    @pytest.mark.parametrize("factors", [
        (SIGNS2, TWO), (SWAP, SIGNS2),
    ], ids=["sign-two", "swap-sign"])
    def test_grid_view_validates(self, factors):
        report = validate_multicat(tensor_grid(factors), max_arity=2)
        assert report.passed, report.summary()

    def test_grid_view_validates_at_bound_three(self):
        report = validate_multicat(tensor_grid((SIGNS2, TWO)), max_arity=3)
        assert report.passed, report.summary()


class TestSFunctor:
    def test_objects(self):
        assert s_object((MTERM2, MTERM2), (star(2), star(3))) == (("*", "*"),) * 6

    def test_preserves_identities(self):
        Ms = (MTERM2, MTERM2)
        ids = (free_identity(MTERM2, star(2)), free_identity(MTERM2, star(2)))
        image = s_morphism(Ms, ids)
        assert image == free_identity(tensor_grid(Ms), s_object(Ms, (star(2), star(2))))

    def test_preserves_composition_exhaustively(self):
        # lengths <= 2 over the arity-2 terminal fixture in both slots
        Ms = (MTERM2, MTERM2)
        F1 = FreePermCat(MTERM2, partial_homs=True)
        FT = FreePermCat(tensor_grid(Ms))
        objs = list(profiles(("*",), 2))
        homs = {(a, b): F1.hom(a, b) for a in objs for b in objs}
        checked = 0
        for a, b, c in itertools.product(objs, repeat=3):
            for f1 in homs[a, b]:
                for g1 in homs[b, c]:
                    left = F1.compose(g1, f1)
                    for a2, b2, c2 in itertools.product(objs, repeat=3):
                        for f2 in homs[a2, b2]:
                            for g2 in homs[b2, c2]:
                                lhs = s_morphism(Ms, (left, F1.compose(g2, f2)))
                                rhs = FT.compose(s_morphism(Ms, (g1, g2)),
                                                 s_morphism(Ms, (f1, f2)))
                                assert lhs == rhs
                                checked += 1
        assert checked > 500

    def test_constraint_b_equals_n_is_identity(self):
        rho = s_constraint_map(2, (2, 2), 1)
        assert rho.is_identity()

    def test_constraint_spec_instance(self):
        assert s_constraint_map(1, (1, 2), 1).images == (1, 3, 2, 4)

    def test_constraint_empty_block_is_identity(self):
        assert s_constraint_map(1, (0, 2), 2).is_identity()
        assert s_constraint_map(1, (2, 2), 0).is_identity()

    def test_constraint_morphism_boundary(self):
        Ms = (TWO, SIGNS2)
        c = s_constraint(Ms, 1, (("a",), star(2)), ("b",))
        assert c.source == (("a", "*"), ("a", "*"), ("b", "*"), ("b", "*"))
        assert c.target == (("a", "*"), ("b", "*"), ("a", "*"), ("b", "*"))

    def test_validates_as_strong_bilinear(self):
        S = s_functor((MTERM2, TWO))
        windows = [S.sources[0].enumerate_objects(2), S.sources[1].enumerate_objects(2)]
        report = validate_nlinear(S, objects=windows)
        assert report.passed, report.summary()
        assert report.metadata["classification"] == "strong"

    def test_single_factor_is_identity(self):
        S = s_functor((SIGNS2,))
        mor = FreeMorphism(star(2), star(1), terminal_map(2), ("-2",))
        assert S.on_mor((mor,)) == mor
        assert S.on_obj((star(2),)) == star(2)
        assert S.strict


def collapse_to_terminal(M, target=MTERM2):
    return Multifunctor(M, target, lambda c: "*",
                        lambda op: f"i{len(M.profile_of(op))}")


class TestSNaturality:
    @pytest.mark.parametrize("H1,H2", [
        (identity_multifunctor(TWO), identity_multifunctor(SIGNS2)),
        (collapse_to_terminal(TWO), collapse_to_terminal(SIGNS2)),
    ], ids=["identities", "collapses"])
    def test_square_on_objects_and_morphisms(self, H1, H2):
        Ms = (H1.source, H2.source)
        Ns = (H1.target, H2.target)
        tensor_H = tensor_of_multifunctors((H1, H2))
        FH1, FH2 = free_on_multifunctor(H1), free_on_multifunctor(H2)
        F_tensor = free_on_multifunctor(tensor_H)
        F1, F2 = FreePermCat(Ms[0], partial_homs=True), FreePermCat(Ms[1], partial_homs=True)
        objs1 = F1.enumerate_objects(2)
        objs2 = F2.enumerate_objects(2)
        for x1, x2 in itertools.product(objs1[:6], objs2[:6]):
            lhs = s_object(Ns, (FH1.on_obj(x1), FH2.on_obj(x2)))
            rhs = tuple(tensor_H.on_obj(c) for c in s_object(Ms, (x1, x2)))
            assert lhs == rhs
        mors1 = [m for a in objs1 for b in objs1 for m in F1.hom(a, b)][:12]
        mors2 = [m for a in objs2 for b in objs2 for m in F2.hom(a, b)][:12]
        for m1, m2 in itertools.product(mors1, mors2):
            lhs = s_morphism(Ns, (FH1.on_mor(m1), FH2.on_mor(m2)))
            rhs = F_tensor.on_mor(s_morphism(Ms, (m1, m2)))
            assert lhs == rhs

    def test_multinat_version(self):
        # 1_S * (prod of thetas) = F(tensor of thetas) pointwise
        P = identity_multifunctor(SIGNS2)
        theta = MultiNat(P, P, lambda c: "+1")
        pair = tensor_of_multinats((theta, theta))
        Ms = (SIGNS2, SIGNS2)
        for x1, x2 in itertools.product([star(0), star(1), star(2)], repeat=2):
            cells = s_object(Ms, (x1, x2))
            whisker = s_morphism(Ms, (FreeMorphism(x1, x1,
                                                   FinMap(len(x1), len(x1),
                                                          tuple(range(1, len(x1) + 1))),
                                                   tuple(theta.at("*") for _ in x1)),
                                      FreeMorphism(x2, x2,
                                                   FinMap(len(x2), len(x2),
                                                          tuple(range(1, len(x2) + 1))),
                                                   tuple(theta.at("*") for _ in x2))))
            direct = FreeMorphism(cells, cells,
                                  FinMap(len(cells), len(cells),
                                         tuple(range(1, len(cells) + 1))),
                                  tuple(pair.at(c) for c in cells))
            assert whisker == direct


class TestTensorMultifunctors:
    def test_tensor_of_identities_validates(self):
        H = tensor_of_multifunctors((identity_multifunctor(TWO),
                                     identity_multifunctor(SIGNS2)))
        report = validate_multifunctor(H, max_arity=2)
        assert report.passed, report.summary()

    def test_braid_validates(self):
        B = braid_multifunctor(TWO, SIGNS2)
        report = validate_multifunctor(B, max_arity=2)
        assert report.passed, report.summary()

    def test_braid_on_operations(self):
        B = braid_multifunctor(TWO, SIGNS2)
        op = tensor_op((SIGNS2, TWO), ("+2", "m"))
        image = B.on_op(op)
        assert image.components == ("m", "+2")
        assert image.twist == grid_transpose(2, 2).inverse()


class TestFMulti:
    def test_unit_law_n1(self):
        P = f_multi(identity_multifunctor(SIGNS2), (SIGNS2,))
        mor = FreeMorphism(star(2), star(1), terminal_map(2), ("-2",))
        assert P.on_mor((mor,)) == mor
        assert P.on_obj((star(2),)) == star(2)

    def test_validates_on_fixture(self):
        mterm4 = terminal_multicat(4)
        H = collapse_to_terminal(tensor_grid((MTERM2, TWO)), mterm4)
        # H must itself be a multifunctor on the grid fragment
        assert validate_multifunctor(H, max_arity=2).passed
        P = f_multi(H, (MTERM2, TWO))
        windows = [P.sources[0].enumerate_objects(2), P.sources[1].enumerate_objects(2)]
        report = validate_nlinear(P, objects=windows)
        assert report.passed, report.summary()
        assert report.metadata["classification"] == "strong"

    def test_f_multi_nat_validates(self):
        H = collapse_to_terminal(tensor_grid((SIGNS2, SIGNS2)), MTERM2)
        theta = MultiNat(H, H, lambda c: "i1")
        nat = f_multi_nat(theta, (SIGNS2, SIGNS2))
        windows = [nat.source.sources[0].enumerate_objects(1),
                   nat.source.sources[1].enumerate_objects(1)]
        report = validate_nlinear_nat(nat, objects=windows)
        assert report.passed, report.summary()


def collapse_grid(M1, M2):
    view = tensor_grid((M1, M2))
    return Multifunctor(view, MTERM2, lambda c: "*",
                        lambda op: f"i{view.arity_of(op)}")


class TestSigmaSquare:
    """The symmetric-action rectangle: S after the product shuffle vs the
    free image of the braiding after S.

    On instances whose grid transpose is trivial (any factor profile of
    length <= 1) the two legs are equal on the nose.  On larger instances
    they differ by the canonical transpose 2-cell, which is verified as an
    exact equation; the on-the-nose claim fails there (checked both ways).
    """

    def legs(self, m1, m2):
        Ms12 = (SIGNS2, TWO)
        Ms21 = (TWO, SIGNS2)
        braid = braid_multifunctor(SIGNS2, TWO)
        path1 = s_morphism(Ms12, (m1, m2))
        path2 = free_on_multifunctor(braid).on_mor(s_morphism(Ms21, (m2, m1)))
        return path1, path2

    def transpose_cell(self, x1, x2):
        # the comparison morphism from the braided 21-grid to the 12-grid
        Ms12 = (SIGNS2, TWO)
        r1, r2 = len(x1), len(x2)
        W = grid_transpose(r1, r2)
        flat12 = s_object(Ms12, (x1, x2))
        source = perm_act(W.inverse(), flat12)
        view = tensor_grid(Ms12)
        return FreeMorphism(source, flat12,
                            FinMap(r1 * r2, r1 * r2, W.inverse().images),
                            tuple(view.unit(c) for c in flat12))

    def test_commutes_on_transpose_trivial_instances(self):
        m1 = FreeMorphism(star(2), star(1), terminal_map(2), ("-2",))
        m2 = free_identity(TWO, ("a",))
        path1, path2 = self.legs(m1, m2)
        assert path1 == path2

    def test_fails_on_the_nose_beyond_singletons(self):
        m1 = free_identity(SIGNS2, star(2))
        m2 = free_identity(TWO, ("a", "b"))
        path1, path2 = self.legs(m1, m2)
        assert path1 != path2    # the strictness gap: profiles reorder

    def test_commutes_up_to_transpose_cell(self):
        F12 = FreePermCat(tensor_grid((SIGNS2, TWO)))
        cases = [
            (free_identity(SIGNS2, star(2)), free_identity(TWO, ("a", "b"))),
            (FreeMorphism(star(2), star(2), FinMap(2, 2, (2, 1)), ("+1", "-1")),
             free_identity(TWO, ("b", "a"))),
            (FreeMorphism(star(2), star(1), terminal_map(2), ("-2",)),
             free_identity(TWO, ("a", "b"))),
        ]
        for m1, m2 in cases:
            path1, path2 = self.legs(m1, m2)
            cell_src = self.transpose_cell(m1.source, m2.source)
            cell_tgt = self.transpose_cell(m1.target, m2.target)
            assert F12.compose(path1, cell_src) == F12.compose(cell_tgt, path2)
