import json
import subprocess
import sys

import pytest

from shirshov import reports
from shirshov.chains import build_tail_poset, b_set_trace, tail_chain_cover
from shirshov.cli import main
from shirshov.process import validate_process
from shirshov.words import Word


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def strip_timing(text):
    data = json.loads(text)
    data.pop("elapsed_seconds")
    return data


def test_divide_example(capsys):
    code, data = run_json(capsys, "divide", "--word", "cba", "--sense", "ordinary")
    assert code == 0 and data["schema"] == 1 and data["command"] == "divide"
    assert data["n_max"] == 3 and data["blocks"] == ["c", "b", "a"]
    assert "elapsed_seconds" in data


def test_bounds_example(capsys):
    code, out, _ = run(capsys, "bounds", "--which", "psi-log2", "--n", "2", "--d", "2", "--l", "2", "--format", "text")
    assert code == 0 and out.strip() == "549755813888"
    code, data = run_json(capsys, "bounds", "--which", "psi-log2", "--n", "2", "--d", "2", "--l", "2")
    assert reports.bound_in(data["value"]).exact == 549755813888


def test_xi_example(capsys):
    code, out, _ = run(capsys, "xi", "--k", "4", "--n", "3", "--format", "text")
    assert code == 0 and out.strip() == "14"


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["divide", "--word", "ab", "--sense", "sideways"])
    assert exc.value.code == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "divide")[0] == 1
    assert run(capsys, "lemma", "2-10", "--n", "1", "--d", "2", "--random", "5", "--length", "8")[0] == 1
    assert run(capsys, "lemma", "2-10", "--n", "1", "--word", "ab")[0] == 1
    assert run(capsys, "bounds", "--which", "psi-log2", "--n", "3", "--d", "2")[0] == 1


def test_usage_error_from_subprocess():
    r = subprocess.run([sys.executable, "-m", "shirshov", "nonsense"], capture_output=True, text=True)
    assert r.returncode == 1 and "usage" in r.stderr


def test_budget_refusal_exits_three(capsys):
    assert run(capsys, "xi", "--k", "12", "--n", "3")[0] == 3
    assert run(capsys, "verify", "--l", "3", "--d", "2", "--cap", "10")[0] == 3


def test_counterexample_exits_two(capsys, monkeypatch):
    from shirshov import cli
    from shirshov.divisibility import Lemma210Report, LemmaStatus

    monkeypatch.setattr(cli, "check_lemma_2_10", lambda w, n, d: Lemma210Report(LemmaStatus.COUNTEREXAMPLE, 9, 1, None))
    code, data = run_json(capsys, "lemma", "2-10", "--n", "1", "--d", "2", "--word", "ab")
    assert code == 2 and data["status"] == "COUNTEREXAMPLE"


def test_lemma_single_words(capsys):
    code, data = run_json(capsys, "lemma", "2-6", "--d", "2", "--word", "aaaa")
    assert code == 0 and data["comparable"] is False and data["power"]["period"] == "a"
    code, data = run_json(capsys, "lemma", "2-7", "--k", "2", "--t", "2", "--word", "aaab")
    assert code == 0 and data["applies"]
    code, data = run_json(capsys, "lemma", "2-9", "--n", "2", "--d", "1", "--u", "ba", "--word", "baba")
    assert code == 0 and reports.verdict_in(data, 26).validate(Word.parse("baba"))
    code, data = run_json(capsys, "lemma", "3-4", "--n", "1", "--d", "2", "--a", "1", "--k", "2", "--word", "abcab")
    assert code == 0 and data["satisfied"]
    code, data = run_json(capsys, "lemma", "4-8", "--n", "3", "--word", "ab" * 6)
    assert code == 0 and data["holds"]
    code, data = run_json(capsys, "lemma", "4-10", "--n", "2", "--word", "abc")
    assert code == 0 and data["status"] == "vacuous"
    code, data = run_json(capsys, "lemma", "5-3", "--n", "2", "--word", "c" + "ab" * 9 + "c")
    assert code == 0 and data["reinserted"]


def test_random_sweep_is_reproducible(capsys):
    argv = ["lemma", "2-10", "--n", "1", "--d", "2", "--random", "40", "--length", "12", "--seed", "7"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0
    assert strip_timing(first) == strip_timing(second)
    _, parallel, _ = run(capsys, *argv, "--threads", "2")
    assert strip_timing(parallel) == strip_timing(first)
    data = strip_timing(first)
    assert data["counterexamples"] == [] and sum(data["statuses"].values()) == 40


def test_identical_config_gives_identical_bytes(capsys):
    argv = ["algorithm51", "--word", "aaaaaaaaabbbbbbbbbab", "--n", "2"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    drop = lambda text: "\n".join(x for x in text.splitlines() if "elapsed_seconds" not in x)
    assert drop(a) == drop(b)


def test_divide_tail_round_trip(capsys):
    w = Word.parse("cbacba")
    _, data = run_json(capsys, "divide", "--word", "cbacba", "--sense", "tail")
    div = reports.tail_division_in(data)
    assert div.validate(w) and len(div.positions) == data["n_max"]
    _, data = run_json(capsys, "divide", "--word", "cbacba")
    div = reports.division_in(data)
    assert div.validate(w) and div.n == data["n_max"]


def test_power_and_cancel_round_trip(capsys):
    w = Word.parse("abaab")
    _, data = run_json(capsys, "power", "--word", "abaab", "--d", "2")
    assert reports.power_in(data["power"], data["alphabet"]).validate(w)
    _, data = run_json(capsys, "cancel", "--word", "abaab", "--n", "3", "--d", "2")
    v = reports.verdict_in(data, data["alphabet"])
    assert v.validate(w, 3, 2)


def test_chains_and_trace_round_trip(capsys):
    w = Word.parse("cbacab")
    _, data = run_json(capsys, "chains", "--word", "cbacab", "--d", "1")
    poset = build_tail_poset(w, 1).poset
    cover = reports.cover_in(data["cover"])
    assert cover.validate(poset) and data["dilworth_equal"]
    assert poset.is_antichain(data["antichain"])
    _, data = run_json(capsys, "trace-b", "--word", "cbacab", "--n", "2", "--d", "2", "--p", "2")
    trace = reports.trace_in(data["trace"], w)
    assert trace == b_set_trace(w, 2, 2, 2, tail_chain_cover(w, 2))


def test_process_round_trip(capsys):
    _, data = run_json(capsys, "process", "--p", "2", "--k", "4")
    seq = reports.process_in(data["witness"])
    assert validate_process(seq) and len(seq) == data["max_length"] == 7 and data["gap"] == 0


def test_height_round_trip(capsys):
    w = Word.parse("aabba")
    _, data = run_json(capsys, "height", "--word", "aabba", "--n", "2")
    h = reports.height_in(data, w)
    assert h.validate() and h.height == 3
    _, data = run_json(capsys, "essential", "--word", "aabba", "--n", "2")
    assert data["essential_height"] == 2


def test_algorithm51_round_trip(capsys):
    text = "c" + "ab" * 9 + "c"
    _, data = run_json(capsys, "algorithm51", "--word", text, "--n", "2")
    tr = reports.removal_in(data, Word.parse(text))
    assert tr.reinsert() == Word.parse(text) and data["reinserted"]
    assert reports.removal_out(tr) == {k: data[k] for k in reports.removal_out(tr)}


def test_search_and_verify(capsys):
    code, data = run_json(capsys, "search", "--l", "2", "--d", "2")
    assert code == 0 and data["max_length"] == 3 and data["witness"] == "aba" and data["exhausted"]
    r = reports.search_in(data, 2)
    assert r.witness == Word.parse("aba", 2)
    code, data = run_json(capsys, "verify", "--l", "1", "--n", "2", "--d", "3")
    assert code == 0 and data["holds"] and data["max_length"] == 2


def test_search_checkpoint_file(capsys, tmp_path):
    full = run_json(capsys, "search", "--l", "2", "--n", "3", "--d", "4")[1]
    part = tmp_path / "part.json"
    assert run(capsys, "search", "--l", "2", "--n", "3", "--d", "4", "--max-nodes", "50", "--out", str(part))[0] == 0
    data = json.loads(part.read_text())
    assert not data["exhausted"] and data["checkpoint"] is not None
    _, resumed = run_json(capsys, "search", "--l", "2", "--n", "3", "--d", "4", "--checkpoint", str(part))
    assert resumed["exhausted"] and resumed["max_length"] == full["max_length"] == 21
    assert resumed["witness"] == full["witness"]
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "search", "--l", "2", "--d", "2", "--checkpoint", str(bad))[0] == 1


def test_word_file_and_large_alphabet(capsys, tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("[30,2,1]\n")
    _, data = run_json(capsys, "divide", "--word-file", str(f))
    assert data["n_max"] == 3 and data["alphabet"] == 31
    assert run(capsys, "divide", "--word", "ab", "--word-file", str(f))[0] == 1
    assert run(capsys, "divide", "--word-file", str(tmp_path / "missing"))[0] == 1


def test_csv_and_text_formats(capsys):
    _, out, _ = run(capsys, "divide", "--word", "cba", "--format", "csv")
    header, row = out.strip().splitlines()
    assert header.split(",")[:3] == ["schema", "command", "word"]
    assert "n_max" in header and '"[""c"",""b"",""a""]"' in row
    _, out, _ = run(capsys, "divide", "--word", "cba", "--format", "text")
    assert "n_max: 3" in out
    _, out, _ = run(capsys, "lemma", "2-10", "--n", "1", "--d", "2", "--random", "5", "--length", "6",
                    "--seed", "1", "--format", "csv")
    header, row = out.strip().splitlines()
    assert "statuses" in header and "seed" in header


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "xi", "--k", "5", "--n", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["xi"] == 42


def test_precision_bits_flag(capsys, monkeypatch):
    _, coarse = run_json(capsys, "bounds", "--which", "psi-log3", "--n", "3", "--d", "3", "--precision-bits", "64")
    _, fine = run_json(capsys, "bounds", "--which", "psi-log3", "--n", "3", "--d", "3")
    c, f = reports.bound_in(coarse["value"]), reports.bound_in(fine["value"])
    assert c.lo <= f.lo <= f.hi <= c.hi and c.hi - c.lo > f.hi - f.lo
    monkeypatch.setenv("SHIRSHOV_PRECISION_BITS", "64")
    _, env = run_json(capsys, "bounds", "--which", "psi-log3", "--n", "3", "--d", "3")
    assert env["value"] == coarse["value"]


def test_compare(capsys):
    code, data = run_json(capsys, "bounds", "--which", "compare", "--n", "3", "--l", "2")
    assert code == 0 and data["orders"]["lopatin vs psi-log3"] == "less"
