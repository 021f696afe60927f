import json

import pytest

from lognorm import cli
from lognorm.chars import naive_rank_galois
from lognorm.numfield import decomposition_data, parse_spec


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank_json_fields(capsys):
    code, out, _ = run(capsys, "rank", "q:2", "--ell", "7", "--oracle")
    assert code == 0
    doc = json.loads(out)
    assert doc["spec"] == "q:2"
    assert (doc["r"], doc["c"], doc["l"]) == (2, 0, 2)
    assert doc["tilde_e_formula"] == 1
    assert doc["tilde_e_oracle"] == {"value": 1, "ambiguous": False, "precision": 12}
    assert doc["thm4_condition_ii"] is False
    assert doc["equality_verdict"] == "fails"
    assert doc["gross_kuzmin_assumed"] == "proved_abelian"


def test_rank_report_rederivable(capsys):
    # the JSON report must match an independent recomputation
    for spec_text, ell in [("q:-1", 2), ("bq:2,-3", 5), ("cyc:5", 2), ("Q", 3)]:
        code, out, _ = run(capsys, "rank", spec_text, "--ell", str(ell))
        assert code == 0
        doc = json.loads(out)
        dd = decomposition_data(parse_spec(spec_text), ell)
        assert doc["tilde_e_formula"] == naive_rank_galois(dd.group, dd.d_inf, dd.d_ell)
        assert (doc["r"], doc["c"], doc["l"]) == (dd.r, dd.c, dd.l)
        assert doc["tilde_e_oracle"] is None


def test_rank_verdict_holds(capsys):
    # imaginary quadratic, single ell-place: condition (ii) holds, abelian proof
    code, out, _ = run(capsys, "rank", "q:-1", "--ell", "7")
    doc = json.loads(out)
    assert code == 0
    assert doc["thm4_condition_ii"] is True
    assert doc["equality_verdict"] == "holds"


def test_exit_parse(capsys):
    code, _, err = run(capsys, "rank", "q:12", "--ell", "5")
    assert code == cli.EXIT_PARSE and "error" in err
    code, _, _ = run(capsys, "rank", "q:2")  # missing --ell
    assert code == cli.EXIT_PARSE


def test_exit_unsupported(capsys):
    code, _, err = run(capsys, "rank", "cyc:10", "--ell", "5")
    assert code == cli.EXIT_UNSUPPORTED and "unsupported" in err
    code, _, err = run(capsys, "rank", "cyc:7", "--ell", "3", "--oracle")
    assert code == cli.EXIT_UNSUPPORTED


def test_exit_ambiguous(capsys, monkeypatch):
    monkeypatch.setattr(cli, "naive_rank_oracle", lambda spec, ell, N=12: (1, True))
    code, _, err = run(capsys, "rank", "q:2", "--ell", "7", "--oracle")
    assert code == cli.EXIT_AMBIGUOUS and "ambiguous" in err


def test_character_command(capsys):
    code, out, _ = run(capsys, "character", "bq:2,-3", "--ell", "5")
    assert code == 0
    assert "tilde_e     = 2" in out
    assert "chi_E" in out and "chi_ell_bar" in out


def test_corpus_determinism_and_jobs(capsys):
    code1, out1, err1 = run(capsys, "corpus", "--dmax", "10", "--oracle")
    assert code1 == 0
    code2, out2, err2 = run(capsys, "corpus", "--dmax", "10", "--oracle", "--jobs", "2")
    assert code2 == 0
    assert out1 == out2
    assert "disagree 0" in err1 and err1 == err2
    lines = out1.strip().splitlines()
    # 1 rational + 13 radicands (-1 and +-d for squarefree d <= 10), 6 primes
    assert len(lines) == 14 * 6
    for line in lines:
        doc = json.loads(line)
        assert doc["tilde_e_oracle"]["value"] == doc["tilde_e_formula"]


def test_corpus_cap(capsys):
    code, _, _ = run(capsys, "corpus", "--dmax", "500")
    assert code == cli.EXIT_PARSE


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("LOGNORM_PRECISION", "16")
    assert cli.default_precision() == 16
    code, out, _ = run(capsys, "rank", "q:2", "--ell", "5", "--oracle")
    assert code == 0
    assert json.loads(out)["tilde_e_oracle"]["precision"] == 16
    monkeypatch.setenv("LOGNORM_PRECISION", "bogus")
    with pytest.raises(cli.SpecParseError):
        cli.default_precision()
    monkeypatch.setenv("LOGNORM_PRECISION", "2")
    with pytest.raises(cli.SpecParseError):
        cli.default_precision()


def test_abstract_group_input(tmp_path, capsys):
    doc = {
        "order": 4,
        "table": [
            [0, 1, 2, 3],
            [1, 0, 3, 2],
            [2, 3, 0, 1],
            [3, 2, 1, 0],
        ],
        "D_inf": [0, 2],
        "D_ell": [0, 1],
        "name": "V4",
    }
    path = tmp_path / "v4.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "rank", f"abs:{path}", "--ell", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["tilde_e_formula"] == 2
    code, _, _ = run(capsys, "rank", f"abs:{path}", "--ell", "5", "--oracle")
    assert code == cli.EXIT_UNSUPPORTED
