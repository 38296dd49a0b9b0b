"""Integration tests for the command-line interface."""

import json
from pathlib import Path

import pytest
from src.app.main import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_ZERO_SHOT_VIOLATION, run

ROOT = Path(__file__).resolve().parents[2]
CONFIGS = ROOT / "configs"
FIXTURES = ROOT / "tests" / "fixtures"
DISJOINT = FIXTURES / "datasets" / "disjoint"
OVERLAP = FIXTURES / "datasets" / "overlap"


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch):
    monkeypatch.delenv("ZSIE_LOG_LEVEL", raising=False)
    monkeypatch.delenv("ZSIE_PALETTE", raising=False)


def test_annotate_inline_text(capsys):
    """Test annotating --text arguments to standard output."""
    code = run([
        "annotate", "--config", str(CONFIGS / "similarity.json"),
        "--text", "IBM headquarters are located in Armonk.", "--text", "I ate a banana.",
    ])

    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert first["text"] == "IBM headquarters are located in Armonk."
    assert "timing" in first


def test_annotate_unknown_component(tmp_path, capsys):
    """Test that an unknown component key exits 1 and names the key."""
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"linker": {"type": "no-such-linker"}}))

    code = run(["annotate", "--config", str(config), "--text", "hello"])

    assert code == EXIT_USAGE
    assert "no-such-linker" in capsys.readouterr().err


def test_annotate_missing_config(tmp_path):
    """Test that an unreadable config is an I/O error."""
    code = run(["annotate", "--config", str(tmp_path / "missing.json"), "--text", "hello"])
    assert code == EXIT_IO


def test_annotate_empty_input(tmp_path):
    """Test that an empty input file gives an empty output file."""
    source = tmp_path / "empty.txt"
    source.write_text("")
    output = tmp_path / "out.jsonl"

    code = run([
        "annotate", "--config", str(CONFIGS / "similarity.json"),
        "--input", str(source), "--output", str(output),
    ])

    assert code == EXIT_OK
    assert output.read_text() == ""


def test_annotate_is_deterministic_across_batch_sizes(tmp_path):
    """Test byte-identical output for batch sizes 1, 3 and 20, run twice."""
    outputs = []
    for attempt in range(2):
        for batch_size in (1, 3, 20):
            output = tmp_path / f"out-{attempt}-{batch_size}.jsonl"
            code = run([
                "annotate", "--config", str(CONFIGS / "similarity.json"),
                "--input", str(FIXTURES / "documents.jsonl"), "--output", str(output),
                "--batch-size", str(batch_size), "--no-timing",
            ])
            assert code == EXIT_OK
            outputs.append(output.read_bytes())

    assert len(set(outputs)) == 1
    lines = outputs[0].decode("utf-8").splitlines()
    assert len(lines) == 20
    assert all("timing" not in json.loads(line) for line in lines)


def test_annotate_bad_batch_size():
    """Test that a non-positive batch size is a usage error."""
    code = run([
        "annotate", "--config", str(CONFIGS / "similarity.json"), "--text", "x", "--batch-size", "0",
    ])
    assert code == EXIT_USAGE


def test_annotate_requires_a_source():
    """Test that argparse usage errors exit 1."""
    with pytest.raises(SystemExit) as excinfo:
        run(["annotate", "--config", str(CONFIGS / "similarity.json")])
    assert excinfo.value.code == EXIT_USAGE


def test_evaluate_oracle_on_disjoint_dataset(tmp_path, capsys):
    """Test a perfect dictionary pipeline: 100% scores and consistent timing."""
    output = tmp_path / "metrics.json"

    code = run([
        "evaluate", "--config", str(CONFIGS / "dictionary_oracle.json"),
        "--dataset", str(DISJOINT), "--output", str(output),
    ])

    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "dictionary_oracle train" in out
    assert "100.00%" in out
    for key in ("total_time_in_seconds", "samples_per_second", "latency_in_seconds"):
        assert key in out

    data = json.loads(output.read_text())["dictionary_oracle"]
    assert list(data) == ["test", "train", "validation"]
    for split, report in data.items():
        assert report["overall_f1_micro"] == 1.0, split
        assert report["overall_accuracy"] == 1.0, split
        assert report["samples_per_second"] * report["latency_in_seconds"] == pytest.approx(1.0, abs=1e-6)


def test_evaluate_selected_splits_and_label(tmp_path, capsys):
    """Test --splits and --label."""
    code = run([
        "evaluate", "--config", str(CONFIGS / "dictionary_oracle.json"), "--dataset", str(DISJOINT),
        "--splits", "test", "--label", "oracle", "--output", str(tmp_path / "m.json"),
    ])

    assert code == EXIT_OK
    header = capsys.readouterr().out.splitlines()[1]
    assert "oracle test" in header
    assert "validation" not in header


def test_evaluate_unknown_split(tmp_path):
    """Test that asking for a missing split is a usage error."""
    code = run([
        "evaluate", "--config", str(CONFIGS / "dictionary_oracle.json"), "--dataset", str(DISJOINT),
        "--splits", "dev", "--output", str(tmp_path / "m.json"),
    ])
    assert code == EXIT_USAGE


def test_evaluate_refuses_overlapping_splits(tmp_path, capsys):
    """Test exit 3 naming the shared class, and --allow-overlap."""
    output = tmp_path / "metrics.json"
    args = [
        "evaluate", "--config", str(CONFIGS / "dictionary_oracle.json"),
        "--dataset", str(OVERLAP), "--output", str(output),
    ]

    assert run(args) == EXIT_ZERO_SHOT_VIOLATION
    assert "Fruit" in capsys.readouterr().err
    assert not output.exists()

    assert run(args + ["--allow-overlap"]) == EXIT_OK
    assert output.exists()


def test_render_entities(tmp_path):
    """Test one HTML file per document, matching the stored renderings."""
    output_dir = tmp_path / "html"

    code = run(["render", "--input", str(FIXTURES / "golden" / "documents.jsonl"), "--output-dir", str(output_dir)])

    assert code == EXIT_OK
    names = sorted(p.name for p in output_dir.iterdir())
    assert names == ["doc-0000.html", "doc-0001.html", "doc-0002.html"]
    for name in names:
        golden = FIXTURES / "golden" / name.replace(".html", ".ent.html")
        assert (output_dir / name).read_text() == golden.read_text()


def test_render_relations(tmp_path):
    """Test the rel style."""
    output_dir = tmp_path / "html"

    code = run([
        "render", "--input", str(FIXTURES / "golden" / "documents.jsonl"),
        "--style", "rel", "--output-dir", str(output_dir),
    ])

    assert code == EXIT_OK
    assert (output_dir / "doc-0001.html").read_text() == (FIXTURES / "golden" / "doc-0001.rel.html").read_text()


def test_render_unknown_style(tmp_path):
    """Test that an unknown style is a usage error."""
    with pytest.raises(SystemExit) as excinfo:
        run(["render", "--input", str(FIXTURES / "golden" / "documents.jsonl"),
             "--style", "dep", "--output-dir", str(tmp_path)])
    assert excinfo.value.code == EXIT_USAGE


def test_annotate_then_render(tmp_path):
    """Test that annotate output feeds render."""
    annotated = tmp_path / "annotated.jsonl"
    assert run([
        "annotate", "--config", str(CONFIGS / "relations.json"),
        "--text", "IBM headquarters are located in Armonk.", "--output", str(annotated),
    ]) == EXIT_OK

    output_dir = tmp_path / "html"
    assert run(["render", "--input", str(annotated), "--style", "rel", "--output-dir", str(output_dir)]) == EXIT_OK

    page = (output_dir / "doc-0000.html").read_text()
    assert '<path class="arc"' in page
    assert "located in" in page


def test_validate_dataset(tmp_path, capsys):
    """Test exit codes 0 (disjoint), 3 (overlap) and 2 (missing catalog)."""
    assert run(["validate-dataset", "--dataset", str(DISJOINT)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "ok"

    assert run(["validate-dataset", "--dataset", str(OVERLAP)]) == EXIT_ZERO_SHOT_VIOLATION
    assert "Fruit" in capsys.readouterr().out

    (tmp_path / "test.jsonl").write_text('{"text": "x"}\n')
    assert run(["validate-dataset", "--dataset", str(tmp_path)]) == EXIT_IO


def test_list_components(capsys):
    """Test that built-in components are listed with their kind."""
    assert run(["list-components"]) == EXIT_OK
    out = capsys.readouterr().out
    for key in ("similarity-linker", "dictionary-linker", "kb-linker", "cosine-relations"):
        assert key in out
    dictionary = next(line for line in out.splitlines() if line.startswith("dictionary-linker"))
    assert dictionary.split()[-1] == "yes"
    ensemble = next(line for line in out.splitlines() if line.startswith("ensemble"))
    assert ensemble.split()[-1] == "depends"


def test_render_invalid_utf8_input(tmp_path, capsys):
    """Test that an input file with invalid UTF-8 bytes is a parse error naming the line."""
    source = tmp_path / "docs.jsonl"
    source.write_bytes(b'{"text": "ok"}\n{"text": "caf\xe9"}\n')

    code = run(["render", "--input", str(source), "--output-dir", str(tmp_path / "html")])

    assert code == EXIT_IO
    assert "docs.jsonl:2: invalid UTF-8" in capsys.readouterr().err


def test_annotate_invalid_utf8_input(tmp_path):
    """Test that annotate rejects an input file that is not UTF-8 with exit code 2."""
    source = tmp_path / "texts.txt"
    source.write_bytes(b"caf\xe9 au lait\n")

    code = run(["annotate", "--config", str(CONFIGS / "similarity.json"), "--input", str(source)])

    assert code == EXIT_IO


def test_validate_dataset_invalid_utf8(tmp_path):
    """Test that a split file with invalid UTF-8 bytes is an I/O error rather than a usage error."""
    (tmp_path / "train.jsonl").write_bytes(b'{"text": "caf\xe9", "entities": []}\n')
    (tmp_path / "classes.train.json").write_text((DISJOINT / "classes.train.json").read_text())

    assert run(["validate-dataset", "--dataset", str(tmp_path)]) == EXIT_IO

    (tmp_path / "train.jsonl").write_text('{"text": "cafe", "entities": []}\n')
    (tmp_path / "classes.train.json").write_bytes(b'{"entities": [{"name": "Caf\xe9"}]}')
    assert run(["validate-dataset", "--dataset", str(tmp_path)]) == EXIT_IO


def test_unknown_log_level_falls_back(monkeypatch, capsys):
    """Test that a ZSIE_LOG_LEVEL naming no logging level is ignored with a warning."""
    monkeypatch.setenv("ZSIE_LOG_LEVEL", "BASIC_FORMAT")

    assert run(["list-components"]) == EXIT_OK
    assert "Ignoring unknown ZSIE_LOG_LEVEL 'BASIC_FORMAT'" in capsys.readouterr().err
