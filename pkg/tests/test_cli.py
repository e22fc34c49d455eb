import pytest

from diffident.algebra import ad_unit, lie_closure, ut
from diffident.cli import main
from diffident.errors import NotMultilinear, ParseError
from diffident.fileformat import (
    check_multilinear,
    parse_algebra_file,
    parse_polynomial,
)
from diffident.shipped import identify_shipped, shipped_algebra_file
from diffident import piengine as pe


@pytest.fixture()
def eps_action():
    u2 = ut(2)
    return lie_closure(u2, [ad_unit(u2, 2, 2, name="eps")])


class TestFileFormat:
    @pytest.mark.parametrize(
        "name,params",
        [
            ("ut2", []),
            ("ut2-eps", []),
            ("ut2-eta", ["1", "1/2"]),
            ("matn", ["2"]),
            ("grassmann-k", ["2"]),
            ("dsum", ["ut2", "matn:2"]),
        ],
    )
    def test_round_trip_byte_identical(self, name, params):
        f = shipped_algebra_file(name, params)
        text = f.serialize()
        assert parse_algebra_file(text).serialize() == text

    def test_parse_validates_derivations(self):
        f = shipped_algebra_file("ut2-eps", [])
        text = f.serialize().replace("0 1 0", "0 1 1")
        g = parse_algebra_file(text)
        from diffident.errors import NotADerivation

        with pytest.raises(NotADerivation):
            g.to_algebra()

    @pytest.mark.parametrize(
        "mangle,fragment",
        [
            (lambda t: t.replace("algebra ut2", "algebre ut2"), "algebra"),
            (lambda t: t.replace("dim 3", "dim x"), "dimension"),
            (lambda t: t.replace("1 1 1 1", "1 9 1 1"), "out of range"),
            (lambda t: t.replace("1 1 1 1", "1 1 1 1/0"), "rational"),
            (lambda t: t.replace("\nend\n", "\n", 1), "expected"),
        ],
    )
    def test_corrupted_inputs_name_a_location(self, mangle, fragment):
        text = shipped_algebra_file("ut2", []).serialize()
        with pytest.raises(ParseError) as err:
            parse_algebra_file(mangle(text)).to_algebra()
        assert fragment in str(err.value)

    def test_identify_shipped(self):
        f = shipped_algebra_file("ut2-eps", [])
        name, info = identify_shipped(f)
        assert name == "ut2-eps" and "checksum" in info

    def test_identify_eta_coefficients(self):
        f = shipped_algebra_file("ut2-eta", ["2", "3"])
        name, info = identify_shipped(f)
        assert name == "ut2-eta"
        assert (info["alpha"], info["beta"]) == (2, 3)

    def test_identify_rejects_tampered(self):
        f = shipped_algebra_file("ut2", [])
        f.table[(2, 2, 2)] = 1
        assert identify_shipped(f) is None


class TestPolynomialParser:
    def test_plain_monomial(self, eps_action):
        p = parse_polynomial("x1 x2", eps_action)
        assert p.terms == {((1, 2), ((), ())): 1}

    def test_coefficients_and_signs(self, eps_action):
        from fractions import Fraction

        p = parse_polynomial("2 x1 x2 - 1/2 x2 x1", eps_action)
        assert p.terms[((1, 2), ((), ()))] == 2
        assert p.terms[((2, 1), ((), ()))] == Fraction(-1, 2)

    def test_exponent_words(self, eps_action):
        p = parse_polynomial("x1^[eps,eps]", eps_action)
        assert p.terms == {((1,), ((0, 0),)): 1}

    def test_commutator_left_normed(self, eps_action):
        p = parse_polynomial("[x1,x2,x3]", eps_action)
        q = pe.left_normed_commutator(
            [pe.LPolynomial.variable(i) for i in (1, 2, 3)]
        )
        assert p.terms == q.terms

    def test_decorated_commutator(self, eps_action):
        p = parse_polynomial("[x1,x2]^[eps] - [x1,x2]", eps_action)
        assert pe.is_identity(p, eps_action)

    def test_unknown_derivation(self, eps_action):
        with pytest.raises(ParseError):
            parse_polynomial("x1^[zeta]", eps_action)

    def test_trailing_garbage(self, eps_action):
        with pytest.raises(ParseError):
            parse_polynomial("x1 x2 ]", eps_action)

    def test_multilinear_check(self, eps_action):
        p = parse_polynomial("x1 x3", eps_action)
        with pytest.raises(NotMultilinear):
            check_multilinear(p)
        assert check_multilinear(parse_polynomial("x1 x2", eps_action)) == 2


class TestCommands:
    def _gen(self, tmp_path, name, params=()):
        out = tmp_path / f"{name}.alg"
        assert main(["gen", name, *params, "-o", str(out)]) == 0
        return str(out)

    def test_gen_and_codim(self, tmp_path, capsys):
        path = self._gen(tmp_path, "ut2")
        assert main(["codim", path, "--max-n", "3"]) == 0
        text = capsys.readouterr().out
        assert "n 1 c 1" in text and "n 3 c 6" in text
        assert "agrees" in text

    def test_decompose_report(self, tmp_path, capsys):
        path = self._gen(tmp_path, "ut2")
        assert main(["decompose", path]) == 0
        text = capsys.readouterr().out
        assert "radical dim 1" in text
        assert "blocks 1 1" in text

    def test_envelope_report(self, tmp_path, capsys):
        path = self._gen(tmp_path, "ut2-eps")
        assert main(["envelope", path]) == 0
        assert "envelope dim 2" in capsys.readouterr().out

    def test_verify_gk_pass(self, tmp_path, capsys):
        path = self._gen(tmp_path, "ut2-eps")
        assert main(["verify-gk", path, "--action", "eps"]) == 0
        assert "verdict PASS" in capsys.readouterr().out

    def test_check_identity(self, tmp_path, capsys):
        path = self._gen(tmp_path, "ut2")
        poly = tmp_path / "p.poly"
        poly.write_text("[x1,x2][x3,x4]")
        assert main(["check-identity", path, "--poly", str(poly)]) == 0
        assert "result true" in capsys.readouterr().out

    def test_check_identity_false_with_witness(self, tmp_path, capsys):
        path = self._gen(tmp_path, "ut2")
        poly = tmp_path / "p.poly"
        poly.write_text("x1 x2 - x2 x1")
        assert main(["check-identity", path, "--poly", str(poly)]) == 0
        out = capsys.readouterr().out
        assert "result false" in out and "witness" in out

    def test_bad_generator_name_is_input_error(self, capsys):
        assert main(["gen", "nosuch"]) == 2

    def test_missing_file_is_input_error(self, capsys):
        assert main(["radical", "/nonexistent/file.alg"]) == 2

    def test_unknown_battery_suite(self, capsys):
        assert main(["battery", "--suite", "nosuch"]) == 2

    def test_reports_deterministic(self, tmp_path, capsys):
        path = self._gen(tmp_path, "ut2")
        main(["codim", path, "--max-n", "2"])
        first = capsys.readouterr().out
        main(["codim", path, "--max-n", "2"])
        second = capsys.readouterr().out
        assert first == second

    def test_battery_exponents_suite(self, capsys):
        assert main(["battery", "--suite", "exponents"]) == 0
        assert "criterion 5 PASS" in capsys.readouterr().out
