"""
Tests for the bangla-ipa command line, driven through cli.run().
"""

import io
import json

import pytest

from bangla_ipa.cli import (
    EXIT_ERRORS,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    build_parser,
    run,
)
from bangla_ipa.core.config import reset_settings


@pytest.fixture
def stdin(monkeypatch):
    def _feed(text):
        monkeypatch.setattr("sys.stdin", io.StringIO(text))

    return _feed


# ─── transcribe ──────────────────────────────────────────────────────────────

def test_transcribe_keeps_one_line_per_input_line(stdin, capsys):
    stdin("জল\n\nচাঁদ উঠেছে\n")
    assert run(["transcribe"]) == EXIT_OK
    lines = capsys.readouterr().out.split("\n")
    assert lines[:3] == ["ɟɔl", "", lines[2]]
    assert lines[2].startswith("cɐ̃d̪ ")
    assert lines[3] == ""
    assert len(lines) == 4


def test_transcribe_trace_column(stdin, capsys):
    stdin("ফজর\n")
    assert run(["transcribe", "--trace"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == "fɔzɔɾ\tফজর:lexicon\n"


def test_transcribe_file_to_file(tmp_path):
    source = tmp_path / "in.txt"
    target = tmp_path / "out.txt"
    source.write_text("মামলায়\n", encoding="utf-8")
    assert run(["transcribe", str(source), "-o", str(target)]) == EXIT_OK
    assert target.read_text(encoding="utf-8") == "mɐmlɐe̯\n"


def test_corpus_out_then_evaluate_scores_zero(tmp_path, stdin, capsys):
    corpus = tmp_path / "corpus.tsv"
    stdin("আমি ভাত খাই\n\nমো. রহিম ২০৬ টাকা দিলেন।\n")
    assert run(["transcribe", "--corpus-out", str(corpus)]) == EXIT_OK
    rows = corpus.read_text(encoding="utf-8").splitlines()
    assert [row.split("\t")[0] for row in rows] == ["s000001", "s000002"]
    capsys.readouterr()

    report = tmp_path / "report.json"
    assert run(["evaluate", "--corpus", str(corpus), "--report", str(report)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("WER 0.0000 PER 0.0000 CER 0.0000")
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["n_sentences"] == 2


def test_evaluate_with_training_vocabulary(tmp_path, write_tsv, capsys):
    test = write_tsv("test.tsv", [["t1", "জল চাঁদ", "ɟɔl cɐ̃d̪"]])
    train = write_tsv("train.tsv", [["a1", "জল", "ɟɔl"]])
    report = tmp_path / "report.txt"
    code = run(["evaluate", "--corpus", str(test), "--train-corpus", str(train),
                "--report", str(report), "--split", "test"])
    assert code == EXIT_OK
    text = report.read_text(encoding="utf-8")
    assert "oov_rate: 0.500000" in text
    assert "split: test" in text


def test_evaluate_rejects_a_bad_corpus(write_tsv):
    bad = write_tsv("bad.tsv", [["s1", "জল"]])
    assert run(["evaluate", "--corpus", str(bad)]) == EXIT_ERRORS


# ─── ipa ─────────────────────────────────────────────────────────────────────

def test_ipa_normalize(stdin, capsys):
    stdin("ɐː̃  kɔ\nmuʃɔk\n")
    assert run(["ipa", "normalize", "--fold"]) == EXIT_OK
    assert capsys.readouterr().out == "ɐ̃ː kɔ\nmʊʃɔk\n"


def test_ipa_normalize_strict_flags_unknown_glyphs(stdin, capsys):
    stdin("kə\n")
    assert run(["ipa", "normalize", "--strict"]) == EXIT_ERRORS
    assert capsys.readouterr().out == "kə\n"


def test_ipa_validate(stdin, capsys):
    stdin("gʱɔɾ\nbʰɐ\n")
    assert run(["ipa", "validate"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "ok"
    assert "BadAspiration" in out[1]


def test_ipa_validate_strict(stdin):
    stdin("bʰɐ\n")
    assert run(["ipa", "validate", "--strict"]) == EXIT_ERRORS


# ─── lexicon ─────────────────────────────────────────────────────────────────

def test_lexicon_check(write_tsv, capsys):
    good = write_tsv("good.tsv", [["জল", "ɟɔl", "override"]])
    assert run(["lexicon", "check", str(good)]) == EXIT_OK
    assert "1 entries ok" in capsys.readouterr().out

    bad = write_tsv("bad.tsv", [["জল", "ɟəl", "override"]])
    assert run(["lexicon", "check", str(bad)]) == EXIT_ERRORS
    assert run(["lexicon", "check", str(bad), "--lenient"]) == EXIT_ERRORS


def test_lexicon_merge(write_tsv, tmp_path):
    a = write_tsv("a.tsv", [["ক", "kɔ", "loan"], ["খ", "kʰɔ", "loan"]])
    b = write_tsv("b.tsv", [["ক", "kɐ", "override"]])
    out = tmp_path / "merged.tsv"
    assert run(["lexicon", "merge", str(a), str(b), "-o", str(out)]) == EXIT_OK
    rows = out.read_text(encoding="utf-8").splitlines()
    assert "ক\tkɐ\toverride" in rows
    assert "খ\tkʰɔ\tloan" in rows


def test_overlay_lexicon_changes_transcription(write_tsv, stdin, capsys):
    overlay = write_tsv("extra.tsv", [["জল", "ɟɐl", "override"]])
    stdin("জল\n")
    assert run(["transcribe", "--lexicon", str(overlay)]) == EXIT_OK
    assert capsys.readouterr().out == "ɟɐl\n"


# ─── Exit codes ──────────────────────────────────────────────────────────────

def test_missing_input_is_an_io_error(tmp_path):
    assert run(["transcribe", str(tmp_path / "missing.txt")]) == EXIT_IO


def test_undecodable_input_is_an_io_error(tmp_path, capsys):
    source = tmp_path / "latin1.txt"
    source.write_bytes(b"\xff\xfe\xfa\n")
    assert run(["transcribe", str(source)]) == EXIT_IO
    assert capsys.readouterr().out == ""

    corpus = tmp_path / "corpus.tsv"
    corpus.write_bytes(b"s1\t\xe0\xa6\tk\n")
    assert run(["evaluate", "--corpus", str(corpus)]) == EXIT_IO


def test_unknown_flag_is_a_usage_error():
    assert run(["transcribe", "--no-such-flag"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE


def test_unknown_rule_id_is_a_usage_error():
    assert run(["transcribe", "--disable-rule", "no-such-rule"]) == EXIT_USAGE


def test_parser_knows_every_command():
    parser = build_parser()
    for argv in (["transcribe"], ["evaluate", "--corpus", "c.tsv"], ["ipa", "validate"],
                 ["lexicon", "check", "x.tsv"], ["lexicon", "merge", "a.tsv"]):
        assert parser.parse_args(argv).command == argv[0]


# ─── Settings ────────────────────────────────────────────────────────────────

@pytest.fixture
def settings_env(monkeypatch):
    yield monkeypatch.setenv
    monkeypatch.undo()
    reset_settings()


def test_environment_number_policy_and_flag_override(settings_env, stdin, capsys):
    settings_env("BANGLA_IPA_NUMBER_POLICY", "digits")
    reset_settings()
    stdin("২০৫০\n")
    assert run(["transcribe"]) == EXIT_OK
    assert len(capsys.readouterr().out.split()) == 4

    stdin("২০৫০\n")
    assert run(["transcribe", "--numbers", "cardinal"]) == EXIT_OK
    assert len(capsys.readouterr().out.split()) == 3
