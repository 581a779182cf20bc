"""
Tests for alignment, error rates, corpus loading and reports.
"""

import io
from fractions import Fraction

import pytest

from bangla_ipa.core.exceptions import CorpusParseError, DegenerateReferenceError, DuplicateIdError
from bangla_ipa.core.utils import load_json_from_file
from bangla_ipa.eval import (
    CorpusRecord,
    EditOp,
    ParallelCorpus,
    cer,
    edit_distance_alignment,
    evaluate_corpus,
    load_corpus,
    load_vocab,
    per,
    save_report,
    vocab_from_corpus,
    wer,
)


# ─── Alignment ───────────────────────────────────────────────────────────────

def test_classic_distance():
    alignment = edit_distance_alignment(list("kitten"), list("sitting"))
    assert alignment.distance == 3
    assert alignment.apply(list("kitten")) == list("sitting")


def test_empty_sides():
    assert edit_distance_alignment([], []).distance == 0
    inserts = edit_distance_alignment([], ["a", "b"])
    assert [op.op for op in inserts.ops] == [EditOp.INSERT, EditOp.INSERT]
    deletes = edit_distance_alignment(["a"], [])
    assert [op.op for op in deletes.ops] == [EditOp.DELETE]


def test_backtrace_prefers_substitution_over_indels():
    alignment = edit_distance_alignment(["a", "b"], ["a", "c"])
    assert [op.op for op in alignment.ops] == [EditOp.MATCH, EditOp.SUBSTITUTE]
    assert alignment.counts()[EditOp.SUBSTITUTE] == 1


def test_ops_carry_indices():
    alignment = edit_distance_alignment(["x", "y", "z"], ["y", "z", "w"])
    assert alignment.distance == 2
    for op in alignment.ops:
        if op.op in (EditOp.MATCH, EditOp.SUBSTITUTE):
            assert op.ref_index is not None and op.hyp_index is not None
        if op.op is EditOp.INSERT:
            assert op.ref_index is None
        if op.op is EditOp.DELETE:
            assert op.hyp_index is None


# ─── Rates ───────────────────────────────────────────────────────────────────

def test_wer_values():
    assert wer("kɔ ɟɔl", "kɔ ɟɔl") == 0
    assert wer("kɔ ɟɔl", "kɔ ɟol") == Fraction(1, 2)
    assert wer("kɔ ɟɔl", "") == 1
    assert isinstance(wer("kɔ", "kɔ"), Fraction)


def test_per_counts_phones_with_their_marks():
    assert per("kɔ", "ko") == Fraction(1, 2)
    assert per("kʰɔ", "kɔ") == Fraction(1, 2)
    assert per("kɔ ɟɔl", "kɔɟɔl") == 0


def test_cer_counts_code_points():
    assert cer("pʰ", "p") == Fraction(1, 2)


def test_folding_is_on_by_default():
    assert wer("muʃɔk", "mʊʃɔk") == 0
    assert wer("muʃɔk", "mʊʃɔk", fold_aliases=False) == 1


def test_degenerate_reference():
    warnings = []
    assert wer("", "kɔ ɟɔl", warnings=warnings) == 2
    assert warnings and warnings[0].startswith("DegenerateReference")
    assert wer("", "") == 0
    with pytest.raises(DegenerateReferenceError):
        wer("", "kɔ", strict=True)


# ─── Corpus ──────────────────────────────────────────────────────────────────

CORPUS = "s1\tজল\tɟɔl\ns2\tচাঁদ\tcɐ̃d̪\n# comment\n\ns3\tমুসক\tmuʃɔk\n"


def test_load_corpus():
    corpus = load_corpus(io.StringIO(CORPUS), split="test")
    assert len(corpus) == 3
    assert [r.id for r in corpus] == ["s1", "s2", "s3"]
    assert corpus.split == "test"
    assert corpus.warnings == []


def test_corpus_errors():
    with pytest.raises(CorpusParseError) as info:
        load_corpus(io.StringIO("s1\tজল\n"))
    assert info.value.line_no == 1
    with pytest.raises(CorpusParseError):
        load_corpus(io.StringIO("\tজল\tɟɔl\n"))
    with pytest.raises(DuplicateIdError):
        load_corpus(io.StringIO("s1\tজল\tɟɔl\ns1\tক\tkɔ\n"))


def test_unknown_reference_glyphs_are_warnings():
    corpus = load_corpus(io.StringIO("s1\tজল\tɟəl\n"))
    assert len(corpus) == 1
    assert "line 1" in corpus.warnings[0]


def test_vocab_sources():
    assert load_vocab(io.StringIO("জল\n# x\nচাঁদ\n")) == {"জল", "চাঁদ"}
    corpus = load_corpus(io.StringIO(CORPUS))
    assert vocab_from_corpus(corpus) == {"জল", "চাঁদ", "মুসক"}


# ─── evaluate_corpus ─────────────────────────────────────────────────────────

def _corpus(pairs):
    return ParallelCorpus(
        CorpusRecord(id=f"r{i}", text="ক", ref_ipa=ref) for i, ref in enumerate(pairs)
    )


def test_micro_average():
    corpus = _corpus(["kɔ ɟɔl", "ɐ b c d̪"])
    report = evaluate_corpus(corpus, hypotheses=["kɔ ɟol", "ɐ b c d̪"])
    assert report.word_errors == 1
    assert report.n_ref_words == 6
    assert report.wer == pytest.approx(1 / 6)
    assert report.averaging == "micro"
    assert len(report.per_sentence) == 2


def test_self_consistency(engine):
    texts = ["জল", "চাঁদ উঠেছে", "মামলায় নিয়ম", "২০৬ টাকা"]
    corpus = ParallelCorpus(
        CorpusRecord(id=str(i), text=t, ref_ipa=engine.transcribe_sentence(t).render())
        for i, t in enumerate(texts)
    )
    report = evaluate_corpus(corpus, engine)
    assert (report.wer, report.per, report.cer) == (0, 0, 0)


def test_oov_rate():
    corpus = ParallelCorpus([CorpusRecord(id="a", text="জল চাঁদ", ref_ipa="ɟɔl cɐ̃d̪")])
    report = evaluate_corpus(corpus, hypotheses=["ɟɔl cɐ̃d̪"], vocab={"জল"})
    assert report.oov_words == 1
    assert report.oov_rate == pytest.approx(0.5)
    assert report.n_hyp_words == 2


def test_empty_corpus():
    report = evaluate_corpus(ParallelCorpus(), hypotheses=[])
    assert report.n_sentences == 0
    assert (report.wer, report.per, report.cer) == (0, 0, 0)
    assert report.warnings == []


def test_hypothesis_count_must_match():
    with pytest.raises(ValueError):
        evaluate_corpus(_corpus(["kɔ"]), hypotheses=[])


def test_save_report_formats(tmp_path):
    report = evaluate_corpus(_corpus(["kɔ ɟɔl"]), hypotheses=["kɔ ɟɔl"])
    json_path = tmp_path / "report.json"
    text_path = tmp_path / "report.txt"
    save_report(report, json_path)
    save_report(report, text_path)
    data = load_json_from_file(json_path)
    assert data["wer"] == 0
    assert data["per_sentence"][0]["id"] == "r0"
    text = text_path.read_text(encoding="utf-8")
    assert text.startswith("wer: 0.000000\n")
    assert "r0\t0\t2\t0\t5\tkɔ ɟɔl\tkɔ ɟɔl" in text
