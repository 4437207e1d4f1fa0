"""JSON and CSV renderings of homology tables and tower reports.

Field order and row order are fixed so exports can be diffed byte for byte.
"""
from __future__ import annotations

import csv
import io
import json

from .homology import HomologyTable
from .tower import TowerReport

CSV_COLUMNS = ["flavor", "m", "n", "g", "h", "d", "dim"]
TOWER_COLUMNS = ["flavor", "m", "n", "k", "g", "h", "d", "homotopy_degree", "dim", "class", "note"]


def table_payload(table: HomologyTable) -> dict:
    fl = table.flavor
    return {
        "flavor": fl.kind,
        "params": {"m": fl.m, "n": fl.n, "min_valence": fl.min_valence,
                   "caps": table.caps.as_dict()},
        "convention_version": table.convention_version,
        "dims": table.rows(),
    }


def table_json(table: HomologyTable) -> str:
    return json.dumps(table_payload(table), indent=2) + "\n"


def table_csv(table: HomologyTable) -> str:
    fl = table.flavor
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in table.rows():
        w.writerow([fl.kind, "" if fl.m is None else fl.m, fl.n,
                    row["g"], row["h"], row["d"], row["dim"]])
    return out.getvalue()


def table_from_payload(data: dict) -> HomologyTable:
    from .basis import Caps
    from .graphs import Flavor

    p = data["params"]
    flavor = Flavor(data["flavor"], p["n"], p["m"], p["min_valence"])
    table = HomologyTable(flavor, caps=Caps(**p["caps"]),
                          convention_version=data["convention_version"])
    for row in data["dims"]:
        table.entries[row["g"], row["h"], row["d"]] = row["dim"]
    return table


def tower_json(report: TowerReport) -> str:
    return json.dumps(report.as_dict(), indent=2) + "\n"


def tower_csv(report: TowerReport) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(TOWER_COLUMNS)
    for r in report.rows:
        w.writerow([report.kind, "" if report.m is None else report.m, report.n, report.k,
                    r["g"], r["h"], r["d"], r["homotopy_degree"],
                    "" if r["dim"] is None else r["dim"], r["class"], r["note"]])
    # formula-only rows: the class column carries the window role
    for win in report.windows:
        note = "" if win.window is None else f"vanishing window {win.window[0]}..{win.window[1]}"
        w.writerow([report.kind, "" if report.m is None else report.m, report.n, report.k,
                    win.g, "" if win.h is None else win.h, win.d, "", "", win.role, note])
    return out.getvalue()
