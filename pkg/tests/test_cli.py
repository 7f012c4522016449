import numpy as np
import pytest

from harmonic_crown.cli import main, scan_rows
from harmonic_crown.config import ConfigError, RunConfig, load_config, parse_config_text
from harmonic_crown.crown import t_max_norms


def test_exit_codes(tmp_path):
    assert main(["bogus"]) == 2
    assert main(["verify", "--q", "0"]) == 2
    assert main(["verify", "--tol-margin", "0"]) == 2
    assert main(["verify", "--config", str(tmp_path / "missing.cfg")]) == 2
    assert main(["mesh", "--out", str(tmp_path / "no" / "dir" / "m.csv")]) == 3
    assert main(["mesh", "--out", str(tmp_path / "m.txt")]) == 2
    assert main(["mesh"]) == 2


@pytest.mark.slow
def test_verify_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("OK")


def test_mesh_file(tmp_path):
    path = tmp_path / "m.csv"
    assert main(["mesh", "--resolution", "64", "--out", str(path)]) == 0
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert data.shape == (4096, 3)
    assert data[0, 2] == pytest.approx(np.pi / 2)


def test_scan(tmp_path):
    path = tmp_path / "s.csv"
    assert main(["scan", "--nu", "0", "--out", str(path)]) == 0
    assert path.read_text().splitlines() == ["absV,absZ,t,margin,member"]
    cfg = RunConfig()
    rows = np.array([r[:4] for r in scan_rows(cfg, 3, 3, 3, 0.5)], dtype=float)
    assert rows.shape == (27, 4) and np.all(rows[:, 3] > 1e-3)
    rows = np.array([r for r in scan_rows(cfg, 3, 2, 3, 1.0)], dtype=float)
    rows = rows[rows[:, 2] != 0]
    assert np.all(np.abs(rows[:, 2]) == pytest.approx(t_max_norms(rows[:, 0], rows[:, 1])))
    assert np.all(rows[:, 3] < 1e-4)


def test_probe(tmp_path, capsys):
    path = tmp_path / "p.csv"
    assert main(["probe", "--v", "0", "--z", "0", "--t", str(np.pi / 2), "--samples", "5", "--out", str(path)]) == 0
    out = capsys.readouterr().out
    assert "membership_flip=" in out and "ball_exit=" in out
    assert path.read_text().splitlines()[0] == "s,margin,member"
    assert main(["probe", "--v", "0", "--z", "0", "--t", "1", "--samples", "1"]) == 2


def test_config_parsing(tmp_path):
    cfg = parse_config_text("# run\nq = 3\nmult=2\nseed = 7\ntol.margin = 1e-6\ntol_eigen=1e-5\nout = x.csv\n")
    assert (cfg.q, cfg.multiplicity, cfg.seed, cfg.out) == (3, 2, 7, "x.csv")
    assert cfg.tol("margin") == 1e-6 and cfg.tol("eigen") == 1e-5
    for bad in ("q = two", "nonsense = 1", "tol.unknown = 1", "no equals sign"):
        with pytest.raises(ConfigError):
            parse_config_text(bad).validate()
    with pytest.raises(ConfigError):
        RunConfig(q=0).validate()
    p = tmp_path / "c.cfg"
    p.write_text("q = 2\n")
    assert load_config(p).q == 2
    assert cfg.with_overrides(q=1).q == 1
