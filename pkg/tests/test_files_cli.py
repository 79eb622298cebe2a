import json
import os
import subprocess
import sys

import pytest

from isotypic.cli import main
from isotypic.files import (FileFormatError, bundle_to_jsonable,
                            catalog_group_file, load_bundle_file,
                            load_group_file)

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "isotypic", "data")


def data_path(name):
    return os.path.abspath(os.path.join(DATA, name))


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_load_group_file_d8():
    G, A = load_group_file(data_path("d8.json"))
    assert G.order == 8
    assert A is not None and A.order == 4
    assert G.is_normal(A)


def test_load_group_catalog_alias():
    G, A = load_group_file("catalog:Q8")
    assert G.order == 8 and A.order == 2


def test_group_file_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FileFormatError):
        load_group_file(str(bad))
    bad2 = tmp_path / "bad2.json"
    bad2.write_text(json.dumps({"name": "x", "degree": 3}))
    with pytest.raises(FileFormatError):
        load_group_file(str(bad2))


def test_load_bundle_file_shipped():
    bundle, G, A = load_bundle_file(data_path("d8_rho_bundle.json"))
    assert bundle.base.size == 2
    assert G.order == 8 and A.order == 4


def test_cmd_irr_z4(capsys):
    code, out = run_cli(["irr", data_path("z4.json")], capsys)
    assert code == 0
    # 4 rows of degree 1
    assert sum(1 for line in out.splitlines() if line.strip().startswith("1 |")) == 4


def test_cmd_irr_trivial(capsys):
    code, out = run_cli(["irr", data_path("trivial.json")], capsys)
    assert code == 0
    assert sum(1 for line in out.splitlines() if "|" in line and "degree" not in line) == 1


def test_cmd_irr_d8_degrees(capsys):
    code, out = run_cli(["--format", "json", "irr", data_path("d8.json")], capsys)
    assert code == 0
    payload = json.loads(out)
    assert [r["degree"] for r in payload["results"]["rows"]] == [1, 1, 1, 1, 2]


def test_cmd_irr_missing_file(capsys):
    assert main(["irr", "/nonexistent/file.json"]) == 2


def test_cmd_irr_cap(capsys):
    assert main(["--max-order", "4", "irr", data_path("d8.json")]) == 3


def test_cmd_irr_cap_applies_to_catalog(capsys):
    assert main(["--max-order", "4", "irr", "catalog:D8"]) == 3


def test_cmd_clifford_d8(capsys):
    code, out = run_cli(["clifford", data_path("d8.json")], capsys)
    assert code == 0
    assert "5 = 2 + 2 + 1" in out


def test_cmd_clifford_trivial_normal(capsys):
    code, out = run_cli(["clifford", data_path("d8.json"), "--normal", "trivial"], capsys)
    assert code == 0
    assert "5 = 5" in out


def test_cmd_clifford_q8_center(capsys):
    code, out = run_cli(["clifford", "catalog:Q8"], capsys)
    assert code == 0
    assert "NONTRIVIAL" in out
    assert "5 = 4 + 1" in out


def test_cmd_clifford_not_normal(capsys):
    code, out = run_cli(["clifford", "catalog:S3", "--normal", "1"], capsys)
    assert code == 4


def test_cmd_bundle_verify_ok(capsys):
    code, out = run_cli(["bundle-verify", data_path("d8_rho_bundle.json")], capsys)
    assert code == 0
    assert "verified" in out


def test_cmd_bundle_verify_corrupted(tmp_path, capsys):
    """A fiber stored redundantly at the second point, corrupted to rho
    instead of the transported rho^3, must be flagged at that point."""
    with open(data_path("d8_rho_bundle.json")) as fh:
        data = json.load(fh)
    rho_mults = data["fibers"][0]["character"]["irreducible_multiplicities"]
    data["fibers"].append({"orbit_rep": 1,
                           "character": {"irreducible_multiplicities": rho_mults}})
    data["group"] = data_path("d8.json")
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(data))
    code, out = run_cli(["bundle-verify", str(bad)], capsys)
    assert code == 1
    assert "MISMATCH" in out
    assert "point 1: MISMATCH" in out


def test_cmd_bundle_verify_not_a_trivial(tmp_path, capsys):
    from isotypic.bundles import EquivariantBundle, GSet
    from isotypic.characters import character_table
    G, A = load_group_file(data_path("d8.json"))
    b = next(g for g in G.elements() if g not in A._member_set and G.element_order(g) == 2)
    Y = GSet.cosets(G, G.subgroup([b]))
    sgrp, _ = Y.stabilizer(0).as_group()
    ts = character_table(sgrp)
    E = EquivariantBundle.from_multiplicities(Y, {0: [1] * len(ts.rows)})
    data = bundle_to_jsonable(E, data_path("d8.json"))
    f = tmp_path / "bad_base.json"
    f.write_text(json.dumps(data))
    assert main(["bundle-verify", str(f)]) == 6


def test_cmd_bordism_adjacent(capsys):
    code, out = run_cli(["--format", "json", "bordism", data_path("d8.json"),
                         "--max-degree", "10"], capsys)
    assert code == 0
    series = json.loads(out)["results"]["series"]
    assert len(series) == 11
    assert all(series[n] == 0 for n in range(1, 11, 2))


def test_cmd_bordism_max_degree_zero(capsys):
    code, out = run_cli(["--format", "json", "bordism", data_path("d8.json"),
                         "--max-degree", "0", "--global"], capsys)
    assert code == 0
    series = json.loads(out)["results"]["series"]
    assert series == [8]  # subgroup conjugacy classes of D8


def test_cmd_d2p_ok(capsys):
    code, out = run_cli(["d2p", "--p", "3", "--max-degree", "20"], capsys)
    assert code == 0
    assert "odd coefficients vanish: True" in out


def test_cmd_d2p_rejects_composite(capsys):
    assert main(["d2p", "--p", "25", "--max-degree", "10"]) == 2
    assert main(["d2p", "--p", "4", "--max-degree", "10"]) == 2


def test_json_reports_are_deterministic(capsys):
    code1, out1 = run_cli(["--format", "json", "clifford", data_path("d8.json")], capsys)
    code2, out2 = run_cli(["--format", "json", "clifford", data_path("d8.json")], capsys)
    assert code1 == code2 == 0
    assert out1 == out2


@pytest.mark.parametrize("argv", [
    ["irr", "catalog:Z4"],
    ["clifford", "catalog:D8"],
    ["bundle-verify", os.path.join(DATA, "d8_rho_bundle.json")],
    ["bordism", "catalog:D8", "--max-degree", "8"],
    ["bordism", "catalog:D8", "--max-degree", "6", "--global"],
    ["d2p", "--p", "3"],
])
def test_json_report_schema_fields(argv, capsys):
    code, out = run_cli(["--format", "json"] + argv, capsys)
    assert code == 0
    payload = json.loads(out)
    for key in ("schema_version", "command", "inputs_digest", "results",
                "warnings", "exit_status"):
        assert key in payload
    assert payload["schema_version"] == 1
    assert json.loads(json.dumps(payload)) == payload


def test_catalog_group_file_roundtrip(tmp_path):
    data = catalog_group_file("D8")
    f = tmp_path / "d8_again.json"
    f.write_text(json.dumps(data))
    G, A = load_group_file(str(f))
    assert G.order == 8 and A.order == 4


def test_cli_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "isotypic.cli", "irr", "catalog:Z4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "order 4" in proc.stdout
