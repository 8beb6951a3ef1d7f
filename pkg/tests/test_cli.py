import json
import subprocess
import sys

import pytest

from omega_frag.buchi import to_automaton
from omega_frag.cli import EXIT_ERROR, main

from conftest import EXAMPLE


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_synt_example(capsys):
    code, out, _ = run(capsys, "synt", EXAMPLE)
    assert code == 0
    assert "elements (6): 1, a, b, aa, ab, ba" in out
    assert "accepted: [aa][aa]^w" in out


@pytest.mark.parametrize("regex,size", [("[ab]^inf", 1), ("[ab]*a[ab]^inf", 2)])
def test_synt_sizes(capsys, regex, size):
    code, out, _ = run(capsys, "synt", regex)
    assert code == 0 and f"elements ({size})" in out


def test_decide_example(capsys):
    code, out, _ = run(capsys, "decide", "alph-bool", EXAMPLE)
    assert code == 1
    assert "[aa][aa]^w ⊆ L but [aa][ab]^w ∩ L = ∅, C=[ab]" in out
    assert "witness_valid: True" in out


def test_decide_exit_codes(capsys):
    assert run(capsys, "decide", "bsigma2", "--oracle", "assume-yes", "[ab]*a[b]^w")[0] == 0
    assert run(capsys, "decide", "bsigma2", "[ab]*a[b]^w")[0] == 2
    assert run(capsys, "decide", "cantor-bool", "[ab]^inf")[0] == 0
    assert run(capsys, "decide", "cantor-bool", "[ab]*a[b]^w")[0] == 1


def test_decide_json(capsys):
    code, out, _ = run(capsys, "decide", "alph-bool", "--json", EXAMPLE)
    d = json.loads(out)
    assert code == 1 and d["answer"] == "no"
    assert d["witness"]["accepted_pair"] == ["aa", "aa"] and d["witness"]["rejected_pair"] == ["aa", "ab"]
    assert d["witness"]["C"] == "ab"
    code, out, _ = run(capsys, "decide", "alph-bool", "--json", "--bounds", "4,4", "[ab]*a[b]^inf")
    d = json.loads(out)
    assert code == 0 and d["checks"]["verified"] is True and d["checks"]["verified_bound"] == [4, 4]


def test_monoid_json_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "synt", "--json", EXAMPLE)
    path = tmp_path / "example.monoid.json"
    path.write_text(out)
    for which in ("alph-bool", "cantor-bool", "bsigma2"):
        a = run(capsys, "decide", which, "--json", EXAMPLE)
        b = run(capsys, "decide", which, "--json", "--monoid", str(path))
        assert a[0] == b[0]
        assert json.loads(a[1]) == json.loads(b[1])


def test_automaton_input(capsys, tmp_path):
    path = tmp_path / "example.aut.json"
    path.write_text(to_automaton(EXAMPLE).to_json())
    code, out, _ = run(capsys, "decide", "alph-bool", "--automaton", str(path))
    assert code == 1 and "C=[ab]" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "[ab]^inf")
    assert code == 0 and "pass" in out
    code, out, _ = run(capsys, "verify", "--bounds", "6,6", "[ab]*a[b]^inf")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--mutate", "drop-block", "[ab]*a[b]^inf")
    assert code == 1 and "FAIL: disagreement on" in out


def test_verify_after_no_is_an_error(capsys):
    code, _, err = run(capsys, "verify", EXAMPLE)
    assert code == EXIT_ERROR and "error" in err


def test_evidence(capsys):
    code, out, _ = run(capsys, "evidence", "-k", "1", "(aa)*")
    assert code == 0 and "not saturated" in out
    code, out, _ = run(capsys, "evidence", "--json", "[ab]^inf")
    assert json.loads(out)["violation"] is None


@pytest.mark.parametrize("argv", [
    ["synt", "(1)^w"],
    ["synt", "a(b"],
    ["synt"],
    ["verify", "--bounds", "9,9", "a^w"],
    ["synt", "--monoid", "/nonexistent/file.json"],
])
def test_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_ERROR
    assert err.startswith("omega-frag: error:")


def test_bad_bounds_syntax():
    with pytest.raises(SystemExit):
        main(["verify", "--bounds", "6", "a^w"])


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "omega_frag.cli", "decide", "cantor-bool", "[ab]^inf"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "YES" in proc.stdout
