from pathlib import Path

import pytest

from unisum.cli.builder import build
from unisum.cli.main import (
    EXIT_CONSTRUCTION,
    EXIT_FAILED,
    EXIT_IO,
    EXIT_OK,
    EXIT_RESIDUAL,
    EXIT_SCHEMA,
    run,
)
from unisum.cli.models import dump_document, parse_document
from unisum.lib.errors import NotInClassError, ResidualExceededError, SchemaError

LOGISTIC = {"kind": "representable", "generator": {"generator_kind": "uninorm-bipolar", "family": "logistic"}}
PROBABILISTIC_SUM = {"kind": "dual", "of": {"kind": "product"}}
U_MIN = {"kind": "u-min", "tnorm": {"kind": "product"}, "tconorm": PROBABILISTIC_SUM, "e": 0.5}
THREE_BLOCK = {
    "kind": "ordinal-sum",
    "e": 0.5,
    "summands": [
        {"a": 0.25, "b": 0.5, "c": 0.5, "d": 0.75, "op": LOGISTIC},
        {"a": 0.0, "b": 0.25, "c": 0.75, "d": 0.75, "op": {"kind": "product"}},
        {"a": 0.0, "b": 0.0, "c": 0.75, "d": 1.0, "op": PROBABILISTIC_SUM},
    ],
}


def test_eval_logistic(write_document, capsys):
    assert run(["eval", write_document(LOGISTIC), "0.8", "0.8"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0.941176470588"


def test_eval_ordinal_sum(write_document, capsys):
    path = write_document(THREE_BLOCK)
    assert run(["eval", path, "0.1", "0.9"]) == EXIT_OK
    assert run(["eval", path, "0.1", "0.6"]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["0.9", "0.1"]


def test_eval_extended_sum(write_document, capsys):
    document = {
        "kind": "extended-sum",
        "base": {
            "kind": "ordinal-sum",
            "e": 0.5,
            "summands": [
                {"a": 0.0, "b": 0.5, "c": 0.5, "d": 0.5, "op": {"kind": "product"}},
                {"a": 0.0, "b": 0.0, "c": 0.5, "d": 0.75, "op": PROBABILISTIC_SUM},
                {"a": 0.0, "b": 0.0, "c": 0.75, "d": 1.0, "op": {"kind": "dual", "of": {"kind": "lukasiewicz"}}},
            ],
        },
        "g": [{"point": 0.0, "endpoint": 1.0, "closed": True}],
    }
    assert run(["eval", write_document(document), "0.0", "0.9"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0"


def test_schema_error(write_document, capsys):
    assert run(["eval", write_document({"kind": "median"}), "0.1", "0.2"]) == EXIT_SCHEMA
    assert capsys.readouterr().err.startswith("error: Invalid operator document")


def test_argument_outside_unit_interval(write_document, capsys):
    assert run(["eval", write_document(LOGISTIC), "1.5", "0.2"]) == EXIT_SCHEMA
    assert "outside the unit interval" in capsys.readouterr().err


def test_invalid_ordinal_sum_names_the_rule(write_document, capsys):
    document = {"kind": "ordinal-sum", "e": 0.5, "summands": [{"a": 0.1, "b": 0.5, "c": 0.5, "d": 1.0, "op": LOGISTIC}]}
    assert run(["eval", write_document(document), "0.3", "0.4"]) == EXIT_CONSTRUCTION
    assert "(rule: lower intervals are disjoint and their closures cover" in capsys.readouterr().err


def test_inadmissible_choice(write_document, capsys):
    document = {
        "kind": "extended-sum",
        "base": {
            "kind": "ordinal-sum",
            "e": 0.5,
            "summands": [
                {"a": 0.0, "b": 0.5, "c": 0.5, "d": 0.5, "op": {"kind": "product"}},
                {"a": 0.0, "b": 0.0, "c": 0.5, "d": 1.0, "op": PROBABILISTIC_SUM},
            ],
        },
        "g": [{"point": 0.0, "endpoint": 0.7, "closed": True}],
    }
    assert run(["eval", write_document(document), "0.0", "0.9"]) == EXIT_CONSTRUCTION
    assert "(rule: admissible g/h families)" in capsys.readouterr().err


def test_missing_document(tmp_path, capsys):
    assert run(["eval", str(tmp_path / "absent.json"), "0.1", "0.2"]) == EXIT_IO
    assert capsys.readouterr().err.startswith("error:")


def test_axioms(write_document, capsys):
    assert run(["axioms", write_document(THREE_BLOCK), "--grid", "21", "--ternary", "11"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [line.split()[0] for line in lines] == [
        "axiom=commutativity",
        "axiom=associativity",
        "axiom=monotonicity",
        "axiom=neutrality",
    ]


def test_axioms_report_the_corrupted_border_variant(write_document, capsys):
    document = {
        "kind": "border-substar",
        "of": {"kind": "u-min", "tnorm": {"kind": "lukasiewicz"}, "tconorm": PROBABILISTIC_SUM, "e": 0.5},
    }
    assert run(["axioms", write_document(document), "--grid", "21", "--ternary", "11"]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert "axiom=associativity max_violation=1 " in out


def test_verify(write_document, capsys):
    logistic_path = write_document(LOGISTIC, "logistic.json")
    single = {"kind": "ordinal-sum", "e": 0.5, "summands": [{"a": 0.0, "b": 0.5, "c": 0.5, "d": 1.0, "op": LOGISTIC}]}
    assert run(["verify", logistic_path, write_document(single, "single.json"), "--grid", "21"]) == EXIT_OK
    product_path = write_document({"kind": "product"}, "product.json")
    assert run(["verify", logistic_path, product_path, "--grid", "21"]) == EXIT_FAILED
    assert capsys.readouterr().out.count("max_difference=") == 2


def test_render(write_document, tmp_path, capsys):
    prefix = tmp_path / "u_min"
    assert run(["render", write_document(U_MIN), "--grid", "21", "--out", str(prefix)]) == EXIT_OK
    out = capsys.readouterr().out
    assert f"csv={prefix}.csv" in out

    csv_lines = Path(f"{prefix}.csv").read_text().splitlines()
    assert csv_lines[0] == "x,y,value"
    assert len(csv_lines) == 1 + 21 * 21
    pgm = Path(f"{prefix}.pgm").read_bytes()
    assert pgm.startswith(b"P5\n21 21\n255\n")
    assert len(pgm) == len(b"P5\n21 21\n255\n") + 21 * 21
    # the jump of U_min across x = e clears the ten-step floor
    pixels = int(out.split("jump_pixels=")[1].split()[0])
    assert pixels > 0


def test_decompose(write_document, capsys):
    assert run(["decompose", write_document(THREE_BLOCK), "--grid", "101"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "breakpoints=0.25,0.5,0.75"
    classes = [line.split("class=")[1].split()[0] for line in lines if line.startswith("summand ")]
    assert classes == ["K2", "K1", "N2"]
    assert lines[-1].startswith("residual=")


def test_decompose_residual_exceeded(mocker, write_document, capsys):
    mocker.patch(
        "unisum.cli.main.decompose",
        side_effect=ResidualExceededError("Reconstruction differs", residual=0.25, witness=(0.1, 0.2)),
    )
    assert run(["decompose", write_document(LOGISTIC)]) == EXIT_RESIDUAL
    captured = capsys.readouterr()
    assert captured.out.strip() == "residual=0.25 witness=0.1,0.2"
    assert "Reconstruction differs" in captured.err


def test_other_failures_are_logged(mocker, write_document):
    mocker.patch("unisum.cli.main.decompose", side_effect=NotInClassError("r increases", witness=(0.2, 0.3)))
    log_err = mocker.patch("unisum.cli.main.traceback_log_err")
    assert run(["decompose", write_document(LOGISTIC)]) == EXIT_FAILED
    log_err.assert_called_once()
    assert log_err.call_args.args[1] == "unisum decompose failed"


def test_document_round_trip():
    node = parse_document(THREE_BLOCK)
    again = parse_document(dump_document(node))
    assert again == node


def test_blackbox_hides_structure():
    handle = build(parse_document({**LOGISTIC, "blackbox": True}))
    assert handle.name == "blackbox"
    assert handle.annihilator_policy is None
    assert handle(0.8, 0.8) == pytest.approx(16.0 / 17.0)


def test_reflection_curve():
    U = build(parse_document({"kind": "s-internal"}))
    assert U.neutral == pytest.approx(0.5)
    # v(0.3) = 0.7
    assert U(0.3, 0.6) == 0.3
    assert U(0.3, 0.8) == 0.8


def test_piecewise_linear_curve():
    U = build(parse_document({"kind": "s-internal", "curve": "piecewise-linear", "e": 0.4}))
    assert U.neutral == pytest.approx(0.4)
    # v(0.2) = 0.7
    assert U(0.2, 0.5) == 0.2
    assert U(0.2, 0.8) == 0.8


def test_unknown_fields_are_rejected():
    with pytest.raises(SchemaError):
        parse_document({"kind": "product", "colour": "red"})
    with pytest.raises(SchemaError):
        parse_document({**U_MIN, "e": 1.5})
