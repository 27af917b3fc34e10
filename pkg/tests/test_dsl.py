import random

import pytest

from sliceshear import (
    ClassMonomial,
    CyclicGroup,
    DslSemanticError,
    DslSyntaxError,
    VirtualRep,
    build_D,
    hhr_family,
    hu_kriz_seed,
    norm_class,
    parse,
    parse_class_expr,
    parse_diff_spec,
    parse_group_name,
    parse_rep,
    print_canonical,
)
from helpers import random_document, random_monomial, random_rep


def C(n):
    return CyclicGroup(n)


class TestGroupLiterals:
    def test_valid(self):
        assert parse_group_name("C1") == C(0)
        assert parse_group_name(" C16 ") == C(4)

    def test_invalid(self):
        with pytest.raises(DslSyntaxError):
            parse_group_name("D8")
        with pytest.raises(DslSemanticError):
            parse_group_name("C6")


class TestRepLiterals:
    def test_examples(self):
        g = C(2)
        assert parse_rep("2-2s", g) == VirtualRep.of(g, triv=2, sigma=-2)
        assert parse_rep("4l1+2s", g) == VirtualRep.of(g, sigma=2, lam={1: 4})
        assert parse_rep("1", g) == VirtualRep.of(g, triv=1)
        assert parse_rep("0", g) == VirtualRep.zero(g)
        assert parse_rep("-s", g) == VirtualRep.of(g, sigma=-1)

    def test_l0_sugar(self):
        g = C(2)
        assert parse_rep("l0", g) == VirtualRep.of(g, sigma=2)
        assert parse_rep("3l0-2s", g) == VirtualRep.of(g, sigma=4)

    def test_unknown_basis_is_semantic(self):
        with pytest.raises(DslSemanticError):
            parse_rep("l3", C(2))
        with pytest.raises(DslSemanticError):
            parse_rep("s", C(0))

    def test_syntax_errors(self):
        g = C(2)
        for bad in ("", "2++s", "2 2s", "s+", "x"):
            with pytest.raises(DslSyntaxError):
                parse_rep(bad, g)

    def test_round_trip(self):
        rng = random.Random(51)
        for _ in range(300):
            g = C(rng.randint(0, 5))
            v = random_rep(rng, g)
            assert parse_rep(str(v), g) == v


class TestClassExpressions:
    def test_tokens(self):
        g = C(3)
        m = parse_class_expr("Nt[3,3]*aS^8*u2S^2", g)
        assert m.norms == ((3, 3, 1),)
        assert m.a_exp == (8, 0, 0) and m.u_exp == (2, 0, 0)

    def test_coefficient_and_unit(self):
        g = C(1)
        assert parse_class_expr("1", g).is_one
        assert parse_class_expr("3*u2S", g).coeff == 3
        assert parse_class_expr("0", g).is_zero

    def test_d_token_expands(self):
        g = C(2)
        assert parse_class_expr("D[2,1]", g) == build_D(2, 1)
        assert parse_class_expr("D[2,3]^2", g).norms == ((3, 2, 2), (6, 2, 2))

    def test_torsion_applied(self):
        g = C(1)
        assert parse_class_expr("2*aS", g).is_zero
        assert parse_class_expr("-1*aS", g).coeff == 1  # reduced mod 2

    def test_level_marker_constraints(self):
        g = C(3)
        with pytest.raises(DslSemanticError):
            parse_class_expr("aL2", g, level=2)  # basis at C4 stops at aL1
        with pytest.raises(DslSemanticError):
            parse_class_expr("Nt[1,3]", g, level=2)
        with pytest.raises(DslSemanticError):
            parse_class_expr("D[3,1]", g, level=2)

    def test_syntax_errors(self):
        g = C(2)
        for bad in ("", "aS**2", "aS^", "aS aS", "Nt[1]", "*aS", "aS*"):
            with pytest.raises(DslSyntaxError):
                parse_class_expr(bad, g)

    def test_round_trip(self):
        rng = random.Random(53)
        for _ in range(300):
            g = C(rng.randint(0, 4))
            lv = rng.randint(0, g.exponent)
            m = random_monomial(rng, g, lv)
            assert parse_class_expr(print_canonical(m), g, lv) == m


class TestCanonicalStrings:
    def test_seed_print(self):
        assert print_canonical(hu_kriz_seed(2)) == "diff 7: u2S^2 -> Nt[2,1]*aS^7"

    def test_family_print(self):
        # the reduced-regular Euler power expands with its sigma part folded in
        assert print_canonical(hhr_family(1, 1)) == "diff 5: u2S -> Nt[1,2]*aL1*aS^3"

    def test_unit_and_zero(self):
        assert print_canonical(ClassMonomial.one(C(1), 1)) == "1"
        assert print_canonical(ClassMonomial.zero(C(1), 1)) == "0"

    def test_norms_sorted_by_level_then_index(self):
        g = C(2)
        m = norm_class(g, 2, j=2) * norm_class(g, 1, j=1) * norm_class(g, 1, j=2)
        assert print_canonical(m) == "Nt[1,1]*Nt[1,2]*Nt[2,2]"

    def test_lambda_descending_then_sigma(self):
        g = C(3)
        m = ClassMonomial(g, 3, a_exp=(2, 3, 1), u_exp=(1, 0, 4))
        assert print_canonical(m) == "aL2*aL1^3*aS^2*uL2^4*u2S"


class TestDiffSpecs:
    def test_parse(self):
        d = parse_diff_spec("3: u2S -> Nt[1,1]*aS^3", C(1))
        assert d == hu_kriz_seed(1)
        assert d.provenance == "user"

    def test_page_below_two(self):
        with pytest.raises(DslSemanticError):
            parse_diff_spec("1: u2S -> aS", C(1))

    def test_invalid_bidegree_reports_stem_first(self):
        with pytest.raises(DslSemanticError, match="stem mismatch"):
            parse_diff_spec("4: u2S -> aS^4", C(1))

    def test_not_an_arrow(self):
        with pytest.raises(DslSyntaxError):
            parse_diff_spec("3: u2S", C(1))


class TestDocuments:
    HU_KRIZ = (
        "# classical chart over C2\n"
        "group C2\n"
        "window -2 8 8\n"
        "class u1 = u2S\n"
        "class t1 = Nt[1,1]*aS^3\n"
        "diff 3: u2S -> Nt[1,1]*aS^3\n"
        "diff 7: u2S^2 -> Nt[2,1]*aS^7\n"
        "guide L0\n"
        "guide L1\n"
    )

    def test_parse_hu_kriz(self):
        doc = parse(self.HU_KRIZ)
        assert doc.group == C(1)
        assert doc.diffs[0] == hu_kriz_seed(1)
        assert doc.diffs[1] == hu_kriz_seed(2)
        assert len(doc.classes) == 2 and len(doc.guides) == 2

    def test_empty_chart_valid(self):
        doc = parse("group C4\n")
        assert doc.group == C(2) and not doc.classes and not doc.diffs

    def test_group_must_come_first(self):
        with pytest.raises(DslSyntaxError):
            parse("window 0 4 4\ngroup C2\n")

    def test_duplicate_statements(self):
        with pytest.raises(DslSemanticError):
            parse("group C2\ngroup C2\n")
        with pytest.raises(DslSemanticError):
            parse("group C2\ngrading s\ngrading s\n")
        with pytest.raises(DslSemanticError):
            parse("group C2\nclass a = 1\nclass a = u2S\n")

    def test_semantic_diff_error_carries_line(self):
        text = "group C2\nclass ok = u2S\ndiff 4: u2S -> aS^4\n"
        with pytest.raises(DslSemanticError) as exc:
            parse(text)
        assert exc.value.line == 3
        assert "stem mismatch" in str(exc.value)

    def test_unknown_basis_in_document(self):
        with pytest.raises(DslSemanticError):
            parse("group C2\nclass x = aL1\n")  # C2 level basis is sigma only

    def test_level_marker(self):
        doc = parse("group C8\nclass t = Nt[1,1]*aS^3 @C2\n")
        name, m = doc.classes[0]
        assert m.level == 1 and m.group == C(3)
        assert print_canonical(doc).splitlines()[1] == "class t = Nt[1,1]*aS^3 @C2"

    def test_window_validation(self):
        with pytest.raises(DslSemanticError):
            parse("group C2\nwindow 4 0 4\n")
        with pytest.raises(DslSemanticError):
            parse("group C2\nwindow 0 4 -1\n")

    def test_guide_validation(self):
        with pytest.raises(DslSemanticError):
            parse("group C4\nguide L3\n")
        with pytest.raises(DslSemanticError):
            parse("group C4\nguide vanish h=3 k=1\n")
        with pytest.raises(DslSyntaxError):
            parse("group C4\nguide diagonal\n")

    def test_order_insensitive_sections(self):
        text = (
            "group C4\n"
            "diff 5: u2S -> Nt[1,2]*aL1*aS^3\n"
            "grading 2-2s\n"
            "class u1 = u2S\n"
            "window -1 4 6\n"
        )
        doc = parse(text)
        assert doc.grading == VirtualRep.of(C(2), triv=2, sigma=-2)
        assert doc.diffs[0] == hhr_family(1, 1)

    def test_round_trip_documents(self):
        rng = random.Random(57)
        for _ in range(100):
            doc = random_document(rng)
            assert parse(print_canonical(doc)) == doc
