import numpy as np
import pytest

from repknot import dihedral as dh
from repknot import quaternion as qt
from repknot.diagram import parse
from repknot.errors import HypothesisViolation, ZeroDeterminant
from repknot.presentation import determinant, wirtinger
from repknot.variety import is_binary_dihedral, is_reducible, residual

from conftest import CORPUS, FIGURE_EIGHT, HOPF, KNOTS, LINKS, TREFOIL
from oracles import brute_force_class_count, dihedral_brute_force, dihedral_group_order


def classes_of(name):
    d = CORPUS[name]
    p = wirtinger(d)
    delta = determinant(d, p)
    return d, p, delta, dh.enumerate_classes(p, delta)


def triples(p):
    return [(r.over, r.into, r.out) for r in p.relations]


class TestEnumeration:
    def test_examples(self):
        assert len(classes_of("3_1")[3]) == 1
        assert len(classes_of("unknot")[3]) == 0
        assert len(classes_of("4_1")[3]) == 2

    def test_zero_determinant(self):
        p = wirtinger(parse("U,U"))
        with pytest.raises(ZeroDeterminant):
            dh.enumerate_classes(p, 0)

    @pytest.mark.parametrize("name", KNOTS)
    def test_knot_count(self, name):
        _, _, delta, classes = classes_of(name)
        assert len(classes) == (delta - 1) // 2

    @pytest.mark.parametrize("name", KNOTS + LINKS)
    def test_brute_force(self, name):
        d, p, delta, classes = classes_of(name)
        if delta ** (p.n_generators - 1) > 2e6:
            pytest.skip("search space too large for brute force")
        assert len(classes) == brute_force_class_count(
            triples(p), p.n_generators, p.distinguished_meridian, delta)
        sols = dihedral_brute_force(triples(p), p.n_generators, p.distinguished_meridian, delta)
        assert sorted(sols) == dh.normalized_solutions(p, delta)

    @pytest.mark.parametrize("name", KNOTS + LINKS)
    def test_class_invariants(self, name):
        _, p, delta, classes = classes_of(name)
        for c in classes:
            assert c.labels[p.distinguished_meridian] == 0
            assert dh.satisfies_relations(c.labels, p, delta)
            assert not c.is_abelian()
            assert c.labels == dh.canonical(c.labels, delta)
        assert len({c.labels for c in classes}) == len(classes)


class TestImageOrder:
    def test_examples(self):
        assert [dh.image_order(c) for c in classes_of("3_1")[3]] == [12]
        assert [dh.image_order(c) for c in classes_of("4_1")[3]] == [20, 20]

    @pytest.mark.parametrize("name", KNOTS + LINKS)
    def test_group_closure_oracle(self, name):
        d, _, delta, classes = classes_of(name)
        for c in classes:
            order = dh.image_order(c)
            assert order == dihedral_group_order(c.labels, delta)
            bound = 4 * delta if d.n_components == 1 else 2 * delta
            assert bound % order == 0


class TestLift:
    @pytest.mark.parametrize("name", KNOTS + LINKS)
    def test_lifts(self, name):
        _, p, _, classes = classes_of(name)
        for c in classes:
            r = dh.lift_to_su2(c, p)
            assert r.residual < 1e-12
            assert np.allclose(r.images[p.distinguished_meridian], qt.I, atol=1e-12)
            assert np.max(np.abs(r.images[:, 0])) < 1e-12
            assert np.allclose(np.linalg.norm(r.images, axis=1), 1, atol=1e-12)
            assert is_binary_dihedral(r) and not is_reducible(r)

    def test_relation_residual_directly(self):
        _, p, _, classes = classes_of("3_1")
        r = dh.lift_to_su2(classes[0], p)
        for word in p.relators():
            assert np.linalg.norm(qt.word_product(word, r.images) - qt.ONE) < 1e-12

    def test_constant_labelling_is_abelian(self):
        _, p, delta, _ = classes_of("3_1")
        r = dh.lift_to_su2(dh.DihedralClass((0, 0, 0), delta), p)
        assert is_reducible(r) and residual(r.images, p, True) < 1e-20

    def test_unnormalized_labels_still_pin(self):
        _, p, delta, classes = classes_of("3_1")
        shifted = dh.DihedralClass(tuple((m + 1) % 3 for m in classes[0].labels), 3, False)
        r = dh.lift_to_su2(shifted, p)
        assert np.allclose(r.images[p.distinguished_meridian], qt.I)
        assert r.residual < 1e-12

    def test_figure_eight_classes_differ(self):
        _, p, _, classes = classes_of("4_1")
        a, b = (dh.lift_to_su2(c, p).character for c in classes)
        assert np.max(np.abs(a - b)) > 1e-3


class TestMeridianForm:
    def test_hopf_vacuous(self):
        d = parse(HOPF)
        p = wirtinger(d)
        assert dh.enumerate_classes(p, 2) == []
        # exhaustive over (Z/2)^2: only abelian labellings exist
        sols = dihedral_brute_force(triples(p), 2, p.distinguished_meridian, 2)
        assert all(all((2 * m) % 2 == 0 for m in s) for s in sols)
        v = dh.meridian_form_check(None, d, 2)
        assert v.consistent and v.vacuous

    def test_whitehead_violates(self):
        with pytest.raises(HypothesisViolation):
            dh.meridian_form_check(None, CORPUS["whitehead"], 8)

    def test_knot_violates(self):
        with pytest.raises(HypothesisViolation):
            dh.meridian_form_check(None, parse(TREFOIL), 3)

    def test_sign_walk_parity_is_linking_parity(self):
        from repknot.diagram import linking_number
        for text in [HOPF, "BR[2; 1,1,1,1,1,1]", "BR[3; 1,2,2,1,-2]"]:
            d = parse(text)
            if d.n_components != 2:
                continue
            lk = linking_number(d, 0, 1)
            for k in range(2):
                flips = sum(1 for o, u in d.crossing_components if u == k and o != k)
                assert flips % 2 == lk % 2

    def test_link_with_classes(self):
        # T(2,6): det 6 = 2 mod 4, linking number 3
        d = parse("BR[2; 1,1,1,1,1,1]")
        p = wirtinger(d)
        delta = determinant(d, p)
        assert delta == 6
        classes = dh.enumerate_classes(p, delta)
        assert classes
        v = dh.meridian_form_check(classes[0], d, delta)
        assert v.consistent and not v.vacuous and len(v.witnesses) == 2
