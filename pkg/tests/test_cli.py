import io

import pytest

from app.cli import build_parser, run
from app.handlers import algebra, convert, series
from app.handlers import enumerate as enumerate_handlers
from app.handlers import verify as verify_handlers
from app.services import verification
from app.services.verification import SuiteResult


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("LOG_LEVEL", "CLI_LANG", "DEGREE_CAP_SCALE"):
        monkeypatch.delenv(name, raising=False)


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue().splitlines(), err.getvalue()


class TestParser:
    @pytest.mark.parametrize(
        "argv, handler",
        [
            (["enumerate", "--degree", "2"], enumerate_handlers.enumerate_basis),
            (["product", "(())", "(())"], algebra.product),
            (["coproduct", "(())"], algebra.coproduct),
            (["dual-product", "(())", "(())"], algebra.dual_product),
            (["idempotent", "(())"], algebra.idempotent),
            (["series", "--max", "3"], series.series),
            (["convert", "--map", "euler"], convert.convert),
            (["verify"], verify_handlers.verify),
        ],
    )
    def test_subcommands(self, argv, handler):
        ns = build_parser("en").parse_args(argv)
        assert ns.command == argv[0]
        assert ns.handler is handler

    def test_common_options(self):
        ns = build_parser("ru").parse_args(["series", "--max", "2", "--lang", "en", "--force"])
        assert ns.lang == "en"
        assert ns.force
        assert ns.maxdeg == 2

    def test_command_is_required(self):
        with pytest.raises(SystemExit):
            build_parser("en").parse_args([])


class TestEnumerate:
    def test_trees(self):
        code, lines, err = call("enumerate", "--family", "tree", "--degree", "3")
        assert code == 0
        assert len(lines) == 5
        assert lines[0] == "(((())))"
        assert "5" in err

    def test_stirling(self):
        code, lines, _ = call("enumerate", "--family", "stirling", "--degree", "2")
        assert code == 0
        assert lines == ["1 1 2 2", "1 2 2 1", "2 2 1 1"]

    def test_cap(self):
        code, lines, err = call("enumerate", "--degree", "11")
        assert code == 2
        assert lines == []
        assert "--force" in err

    def test_cap_scale(self, monkeypatch):
        monkeypatch.setenv("DEGREE_CAP_SCALE", "1")
        code, _, _ = call("enumerate", "--family", "binary", "--degree", "1")
        assert code == 0

    def test_large_alphabet_is_refused(self):
        code, lines, err = call("enumerate", "--family", "labelled", "--alphabet", "10", "--degree", "6")
        assert code == 2
        assert lines == []
        assert "132000000" in err
        assert "--force" in err

    def test_small_alphabet_within_limit(self):
        code, lines, _ = call("enumerate", "--family", "labelled", "--alphabet", "3", "--degree", "2")
        assert code == 0
        assert len(lines) == 18

    def test_bad_degree(self):
        code, _, _ = call("enumerate", "--degree", "three")
        assert code == 2


class TestAlgebra:
    def test_product(self):
        code, lines, _ = call("product", "(())", "(())")
        assert code == 0
        assert lines == ["1*tree:((())) + 1*tree:(()())"]

    def test_expanded_product(self):
        code, lines, _ = call("product", "--expand", "(())", "(())")
        assert code == 0
        assert lines == ["-\t1\t((()))", "-\t2\t(()())"]

    def test_treed_product(self):
        code, lines, _ = call("product", "--family", "treed", "1 1", "1 1")
        assert code == 0
        assert lines == ["1*word:1 1 2 2 + 1*word:1 2 2 1"]

    def test_coproduct(self):
        code, lines, _ = call("coproduct", "--family", "binary", "(.,.)")
        assert code == 0
        assert lines == ["1*binary:(.,.) (x) binary:. + 1*binary:. (x) binary:(.,.)"]

    def test_dual_coproduct(self):
        code, lines, _ = call("coproduct", "--dual", "(()())")
        assert code == 0
        assert lines == ["1*tree:(()()) (x) tree:() + 1*tree:(()) (x) tree:(()) + 1*tree:() (x) tree:(()())"]

    def test_dual_product(self):
        code, lines, _ = call("dual-product", "(())", "(())")
        assert code == 0
        assert lines == ["1*tree:((())) + 1*tree:(()())"]

    def test_idempotent(self):
        code, lines, _ = call("idempotent", "((()))")
        assert code == 0
        assert lines == ["1*tree:((())) + -1*tree:(()())"]

    def test_labelled_operand_for_unlabelled_family(self):
        code, lines, err = call("product", "((1))", "(())")
        assert code == 2
        assert lines == []
        assert "Invalid input" in err

    def test_operand_count(self):
        code, _, err = call("product", "(())")
        assert code == 2
        assert "needs 2 operand(s), got 1" in err

    def test_expand_is_for_trees(self):
        code, _, _ = call("product", "--family", "binary", "--expand", "(.,.)", "(.,.)")
        assert code == 2

    def test_unexpected_error(self, monkeypatch):
        def explode(left, right):
            raise RuntimeError("boom")

        monkeypatch.setitem(algebra._PRODUCTS, "tree", explode)
        code, _, err = call("product", "(())", "(())")
        assert code == 1
        assert "Unexpected error" in err

    def test_russian_messages(self):
        code, _, err = call("product", "--lang", "ru", "(())")
        assert code == 2
        assert "нужно операндов" in err


class TestSeries:
    def test_sorted(self):
        code, lines, _ = call("series", "--family", "sorted", "--max", "7")
        assert code == 0
        assert lines[0] == "n\ta_n\tb_n"
        assert [line.split("\t")[2] for line in lines[1:]] == ["1", "1", "3", "13", "71", "461", "3447"]

    def test_rank(self):
        code, lines, err = call("series", "--max", "3", "--rank")
        assert code == 0
        assert lines == ["n\ta_n\tb_n\trank", "1\t1\t1\t1", "2\t2\t1\t1", "3\t5\t2\t2"]
        assert err

    def test_rank_cap(self):
        code, _, _ = call("series", "--family", "labelled", "--max", "5", "--rank")
        assert code == 2


class TestConvert:
    def test_euler_from_stdin(self):
        code, lines, _ = call("convert", "--map", "euler", stdin="((1 (3))(5 (6 (4))(2)))\n\n")
        assert code == 0
        assert lines == ["((1 (3))(5 (6 (4))(2)))\t1 3 3 1 5 6 4 4 6 2 2 5"]

    def test_permutation_to_sorted(self):
        code, lines, _ = call("convert", "--map", "permutation-to-sorted", "2413")
        assert code == 0
        assert lines == ["2413\t((1 (2)(4))(3))"]

    def test_planar_to_binary(self):
        code, lines, _ = call("convert", "--map", "planar-to-binary", "(()())", "((()))")
        assert code == 0
        assert lines == ["(()())\t(.,(.,.))", "((()))\t((.,.),.)"]

    def test_bad_line(self):
        code, _, _ = call("convert", "--map", "euler-inverse", "1 2 1 2")
        assert code == 2


class TestVerify:
    def test_ok(self):
        code, lines, err = call("verify", "--suite", "counts", "--suite", "partitions", "--maxdeg", "3")
        assert code == 0
        assert lines == ["OK"]
        assert "counts:" in err and "partitions:" in err
        assert "About 9 basis elements to visit for verify up to degree 3." in err

    def test_failure(self, monkeypatch):
        monkeypatch.setitem(
            verification.SUITES, "counts", lambda maxdeg: SuiteResult("counts", 1, ["broken count"])
        )
        code, lines, _ = call("verify", "--suite", "counts")
        assert code == 1
        assert lines == ["  broken count", "FAILED"]

    def test_cap(self):
        code, _, err = call("verify", "--suite", "hopf", "--maxdeg", "9")
        assert code == 2
        assert "hopf" in err

    def test_unknown_suite(self):
        code, _, _ = call("verify", "--suite", "nope")
        assert code == 2
