#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


import csv
from json import dumps, loads
from typing import Dict, List

from builder import OUTPUT_DIR_VARIABLE

from main import create_cli_parser, main

import pytest


# HELPERS #############################################################################################################


def rows(text: str) -> List[Dict[str, str]]:
	return list(csv.DictReader(line for line in text.splitlines() if not line.startswith("#")))


# TESTS ###############################################################################################################


def test_oscillator_ground_state(capsys):
	status = main(["afm", "--family", "quad-centrifugal", "--beta", "0", "--n", "0", "--l", "0", "-f", "csv"])
	(row,) = rows(capsys.readouterr().out)

	assert status == 0
	assert (row["family"], row["beta"], row["formulation"]) == ("quad-centrifugal", "0", "eps")
	assert float(row["energy"]) == pytest.approx(3.0, rel=1e-12)
	assert row["provenance"] == "afm-closed-form"


def test_level_window(capsys):
	assert main(["afm", "--family", "funnel", "--beta", "1", "--n-max", "1", "--l-max", "2", "-f", "csv"]) == 0

	levels = [(int(row["n"]), int(row["l"])) for row in rows(capsys.readouterr().out)]
	assert levels == [(n, l) for n in range(2) for l in range(3)]  # noqa: E741


def test_generic_engine_matches_closed_forms(capsys):
	arguments = [
		"afm", "--family", "funnel", "--beta", "0.5", "--n-max", "1", "--l-max", "1", "-f", "csv", "--digits", "17",
	]

	main(arguments)
	closed = rows(capsys.readouterr().out)
	main(arguments + ["--generic"])
	generic = rows(capsys.readouterr().out)

	assert {row["provenance"] for row in generic} == {"afm-generic"}
	for expected, actual in zip(closed, generic):
		assert float(actual["energy"]) == pytest.approx(float(expected["energy"]), rel=1e-7)


def test_physical_parameters(capsys):
	assert main(["afm", "--family", "kratzer", "--mass", "0.5", "--a", "1", "--n", "0", "--l", "0", "-f", "csv"]) == 0
	(row,) = rows(capsys.readouterr().out)

	assert (row["beta"], row["formulation"]) == ("", "physical")
	# N = n + l + 1 gives −β/(β + 1) at β = 2ma² = 1
	assert float(row["energy"]) == pytest.approx(-0.5, rel=1e-12)


@pytest.mark.parametrize("nmodel", ["default", "ho", "coulomb", "linear"])
def test_kratzer_generic_engine_follows_the_model(nmodel, capsys):
	arguments = ["afm", "--family", "kratzer", "--beta", "0.7", "--n-max", "2", "--l-max", "2", "--nmodel", nmodel,
		"-f", "csv", "--digits", "17"]

	assert main(arguments) == 0
	closed = rows(capsys.readouterr().out)
	assert main(arguments + ["--generic"]) == 0
	generic = rows(capsys.readouterr().out)

	assert len(closed) == len(generic) == 9
	for expected, actual in zip(closed, generic):
		assert float(actual["energy"]) == pytest.approx(float(expected["energy"]), rel=1e-9)
	if nmodel == "ho":
		# N = 2n + l + 3/2
		assert float(closed[0]["energy"]) == pytest.approx(-0.7 / (0.7 + 1.5**2), rel=1e-12)


@pytest.mark.parametrize("command", [
	["afm", "--family", "funnel", "--beta", "0.5", "--n-max", "2", "--l-max", "2", "--nmodel", "set1"],
	["spectrum", "--family", "quad-coulomb", "--beta", "1", "--n-max", "1", "--l-max", "1", "--mesh-size", "400"],
])
@pytest.mark.parametrize("output_format", ["csv", "json", "text", "xml"])
def test_output_is_reproducible(command, output_format, capsys):
	outputs = []
	for _ in range(2):
		assert main(command + ["-f", output_format]) == 0
		outputs.append(capsys.readouterr().out)

	assert outputs[0] == outputs[1]
	assert outputs[0]


@pytest.mark.parametrize("arguments, status", [
	(["afm", "--family", "funnel"], 1),
	(["afm", "--family", "funnel", "--beta", "1", "--mass", "1", "--a", "1", "--b", "1"], 1),
	(["afm", "--family", "funnel", "--beta", "-1"], 1),
	(["afm", "--family", "anharmonic", "--beta", "1", "--formulation", "eta"], 1),
	(["fit", "--family", "kratzer"], 1),
	(["afm", "--family", "funnel", "--beta", "1", "--mesh-size", "8"], 1),
	(["afm", "--family", "kratzer", "--beta", "0"], 2),
])
def test_exit_status(arguments, status, capsys):
	assert main(arguments) == status
	assert capsys.readouterr().out == ""


def test_version(capsys):
	with pytest.raises(SystemExit):
		create_cli_parser().parse_args(["--version"])

	assert "0.1.0" in capsys.readouterr().out


def test_configuration_file(tmp_path, capsys):
	config = tmp_path / "run.json"
	config.write_text(dumps({"family": "funnel", "beta": 0.5, "format": "json", "n-max": 1, "l_max": 0}))

	assert main(["afm", "--config", str(config), "--beta", "2"]) == 0
	entries = loads(capsys.readouterr().out)["entries"]

	assert [(entry["beta"], entry["n"], entry["l"]) for entry in entries] == [(2.0, 0, 0), (2.0, 1, 0)]


def test_unknown_configuration_key(tmp_path):
	config = tmp_path / "run.json"
	config.write_text(dumps({"family": "funnel", "beta": 0.5, "colour": "red"}))

	assert main(["afm", "--config", str(config)]) == 1


def test_output_directory(tmp_path, monkeypatch, capsys):
	monkeypatch.setenv(OUTPUT_DIR_VARIABLE, str(tmp_path))

	assert main(["afm", "--family", "funnel", "--beta", "1", "--n-max", "0", "--l-max", "0", "--output", "out/a.csv"]) == 0
	assert capsys.readouterr().out == ""
	assert (tmp_path / "out" / "a.csv").is_file()


def test_compare_reads_back_spectrum(tmp_path, capsys):
	spectrum = tmp_path / "spectrum.csv"
	window = ["--family", "funnel", "--beta", "0.5", "--n-max", "1", "--l-max", "1", "--digits", "17"]

	assert main(["spectrum", *window, "--mesh-size", "400", "-f", "csv", "--output", str(spectrum)]) == 0
	assert main(["compare", *window, "--numeric", str(spectrum), "-f", "json"]) == 0
	deviations, chi = loads(capsys.readouterr().out)["tables"]

	assert len(deviations["rows"]) == 4
	for n, l, numeric, afm, absolute, relative in deviations["rows"]:  # noqa: E741
		assert absolute == pytest.approx(abs(afm - numeric), rel=1e-12)
		assert relative == pytest.approx(absolute / abs(numeric), rel=1e-12)

	(row,) = chi["rows"]
	expected = sum(line[4]**2 for line in deviations["rows"]) / 4
	assert row[:4] == ["funnel", 0.5, "eps", "afm-closed-form"]
	assert row[4] == pytest.approx(expected, rel=1e-12)


def test_compare_rejects_foreign_table(tmp_path):
	spectrum = tmp_path / "spectrum.csv"

	assert main(["spectrum", "--family", "kratzer", "--beta", "1", "--n", "0", "--l", "0", "--mesh-size", "400",
		"-f", "csv", "--output", str(spectrum)]) == 0
	assert main(["compare", "--family", "funnel", "--beta", "1", "--n", "0", "--l", "0", "--numeric", str(spectrum)]) == 1
