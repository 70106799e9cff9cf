"""End-to-end CLI runs: file contents, determinism, exit codes."""

import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from morse_revive.cli import main


def run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


def read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_spectrum_18(tmp_path, capsys):
    assert run(tmp_path, "spectrum", "--omega-e", "18", "--omega-chi", "1") == 0
    out = capsys.readouterr().out
    assert str(tmp_path / "spectrum.csv") in out
    header, rows = read_csv(tmp_path / "spectrum.csv")
    assert header == ["n", "E_n_cm-1", "beat_gap_cm-1"]
    data = [r for r in rows if r[0].isdigit()]
    assert len(data) == 9
    assert data[0][1] == "8.75" and data[0][2] == ""
    assert data[8][1] == "80.75" and data[8][2] == "2"
    meta = {r[0]: r[1] for r in rows if not r[0].isdigit()}
    assert meta["D_cm-1"] == "81"
    assert meta["delta_N"] == "1/2"
    assert meta["M"] == "1" and meta["N"] == "1"


def test_spectrum_17_zero_defect_metadata(tmp_path):
    assert run(tmp_path, "spectrum", "--omega-e", "17", "--omega-chi", "1") == 0
    _, rows = read_csv(tmp_path / "spectrum.csv")
    meta = {r[0]: r[1] for r in rows if not r[0].isdigit()}
    assert meta["delta_N"] == "0/1"
    assert meta["M"] == "2" and meta["N"] == "1"
    assert float(meta["T_rev_ps"]) == pytest.approx(2 * float(meta["T_min_rev_ps"]))


def test_spectrum_42_timing(tmp_path):
    assert run(tmp_path, "spectrum", "--omega-e", "42", "--omega-chi", "1") == 0
    _, rows = read_csv(tmp_path / "spectrum.csv")
    data = [r for r in rows if r[0].isdigit()]
    assert len(data) == 21
    meta = {r[0]: r[1] for r in rows if not r[0].isdigit()}
    assert float(meta["T_rev_ps"]) == pytest.approx(16.678204760, rel=1e-9)


def _evolve_small(tmp_path):
    return run(
        tmp_path,
        "evolve",
        "--omega-e",
        "42",
        "--omega-chi",
        "1",
        "--t-steps",
        "64",
        "--q-points",
        "128",
    )


def test_evolve_outputs(tmp_path):
    assert _evolve_small(tmp_path) == 0
    ppm = (tmp_path / "wavefield.ppm").read_bytes()
    assert ppm.startswith(b"P6\n")
    header, pixels = ppm.split(b"255\n", 1)
    assert b"128 64" in header
    assert b"t ascending downward" in header
    assert len(pixels) == 64 * 128 * 3
    row0, row_last = pixels[: 128 * 3], pixels[-128 * 3 :]
    assert row0 == row_last  # full revival reproduces the first row
    head, rows = read_csv(tmp_path / "autocorr.csv")
    assert head == ["t_ps", "abs_A", "re_A", "im_A"]
    assert rows[0][0] == "0" and rows[0][1] == "21"
    assert len(rows) == 64
    # the even-depth dip at half the revival (straddled by rows 31/32 on a
    # 63-interval grid) against the odd-depth peak at exactly T_rev/3
    assert min(float(r[1]) for r in rows[30:34]) < 2.0
    assert float(rows[21][1]) > 10


def test_evolve_byte_stability(tmp_path):
    sub_a, sub_b = tmp_path / "a", tmp_path / "b"
    assert _evolve_small(sub_a) == 0
    assert _evolve_small(sub_b) == 0
    for name in ("wavefield.ppm", "autocorr.csv"):
        assert (sub_a / name).read_bytes() == (sub_b / name).read_bytes()


def test_evolve_memory_guard_exit_code(tmp_path, capsys):
    code = run(
        tmp_path,
        "evolve",
        "--omega-e",
        "42",
        "--omega-chi",
        "1",
        "--t-steps",
        "100000000",
    )
    assert code == 3
    assert "numeric failure" in capsys.readouterr().err


def test_farey_outputs(tmp_path):
    assert run(tmp_path, "farey", "--depth", "7") == 0
    _, rows = read_csv(tmp_path / "farey.csv")
    assert len(rows) == 19
    by_frac = {r[0]: r for r in rows}
    assert by_frac["1/2"][4] == "0.125"
    assert by_frac["1/3"][5:] == ["0", "1/2"]
    root = ET.parse(tmp_path / "farey.svg").getroot()  # valid XML
    ns = "{http://www.w3.org/2000/svg}"
    circles = root.findall(f"{ns}circle")
    assert len(circles) == 19
    for c in circles:
        frac = Fraction(c.get("data-fraction"))
        # radius text carries 12 significant digits
        assert float(c.get("r")) == pytest.approx(
            800 / (2 * frac.denominator**2), rel=1e-10
        )
        if frac.denominator == 1:
            assert c.get("clip-path")  # unit circles render as semicircles
    pixels = {p.get("data-fraction"): p.get("data-pixels") for p in root.findall(f"{ns}polygon")}
    assert pixels["2/3"] == "2x3"
    assert pixels["1/2"] == "1x2"


def test_farey_depth1_semicircles(tmp_path):
    assert run(tmp_path, "farey", "--depth", "1") == 0
    root = ET.parse(tmp_path / "farey.svg").getroot()
    ns = "{http://www.w3.org/2000/svg}"
    circles = root.findall(f"{ns}circle")
    assert len(circles) == 2
    assert all(c.get("clip-path") for c in circles)
    assert root.findall(f"{ns}polygon") == []


def test_annotate_42(tmp_path):
    assert run(tmp_path, "annotate", "--omega-e", "42", "--omega-chi", "1") == 0
    header, rows = read_csv(tmp_path / "annotate.csv")
    assert header == ["t_ps", "fraction", "depth", "expected_kind", "observed_kind", "match"]
    assert len(rows) == 19
    assert all(r[5] == "true" for r in rows)
    by_frac = {r[1]: r for r in rows}
    assert by_frac["1/2"][3] == "node"
    assert by_frac["0/1"][3] == "peak" and by_frac["0/1"][0] == "0"
    assert by_frac["1/1"][4] == "peak"


def test_classical_three_levels(tmp_path):
    assert run(
        tmp_path, "classical", "--omega-e", "7", "--omega-chi", "1", "--t-steps", "64"
    ) == 0
    _, rows = read_csv(tmp_path / "classical.csv")
    levels = {r[0] for r in rows}
    assert levels == {"0", "1", "2"}  # n=3 sits at dissociation, no orbit
    assert len(rows) == 3 * 64


def test_classical_deep_well_keeps_drift_bounded(tmp_path):
    # the top orbit spans many harmonic periods; substeps must scale with it
    assert run(
        tmp_path, "classical", "--omega-e", "18", "--omega-chi", "1", "--t-steps", "32"
    ) == 0
    _, rows = read_csv(tmp_path / "classical.csv")
    assert {r[0] for r in rows} == {str(n) for n in range(9)}


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("omega_e = 18\nomega_chi = 1\n")
    out = tmp_path / "out"
    assert main(
        ["spectrum", "--config", str(cfg), "--omega-e", "42", "--out", str(out)]
    ) == 0
    _, rows = read_csv(out / "spectrum.csv")
    assert len([r for r in rows if r[0].isdigit()]) == 21  # flag beat the file


def test_config_errors_exit_2(tmp_path, capsys):
    assert run(tmp_path, "spectrum", "--omega-chi", "0") == 2
    assert "omega_chi" in capsys.readouterr().err
    assert run(tmp_path, "spectrum", "--q-points", "1") == 2
    assert "q_points" in capsys.readouterr().err
    cfg = tmp_path / "run.cfg"
    cfg.write_text("wheels = 4\n")
    assert main(["spectrum", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert "wheels" in capsys.readouterr().err
    missing = tmp_path / "nope.cfg"
    assert main(["spectrum", "--config", str(missing), "--out", str(tmp_path)]) == 2
