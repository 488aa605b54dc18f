# vim: expandtab:ts=4:sw=4
"""Result files: the knot table, the JSONL tabulation log and scan CSVs."""
import json
import logging
import os

import pandas as pd

log = logging.getLogger(__name__)

RECORD_KEY = ("name", "family", "rank")


def read_knot_table(path):
    """Read ``name<TAB>strands<TAB>word`` lines; ``#`` starts a comment.

    Returns
    -------
    DataFrame
        Columns ``name``, ``strands`` and ``word``, all as text. A missing
        word is the empty braid.

    """
    table = pd.read_csv(path, sep="\t", names=("name", "strands", "word"),
                        dtype=str, keep_default_na=False, comment="#",
                        skip_blank_lines=True, engine="python",
                        on_bad_lines="warn")
    table["word"] = table["word"].fillna("")
    return table


class JsonlAppender(object):
    """Append-only JSON-lines file keyed by ``(name, family, rank)``.

    Parameters
    ----------
    path : str
        Created on first append if missing.

    """

    def __init__(self, path):
        self.path = path
        self.keys = set()
        if os.path.exists(path) and os.path.getsize(path) > 0:
            existing = pd.read_json(path, lines=True, dtype=False)
            for row in existing.itertuples(index=False):
                self.keys.add(self.key(row._asdict()))
        log.debug("%s holds %d records", path, len(self.keys))

    @staticmethod
    def key(record):
        return tuple(str(record[k]) for k in RECORD_KEY)

    def __contains__(self, record):
        return self.key(record) in self.keys

    def append(self, record):
        """Write ``record`` unless its key is already present; True if written."""
        if record in self:
            return False
        with open(self.path, "a") as f:
            f.write(json.dumps(record, sort_keys=True) + "\n")
        self.keys.add(self.key(record))
        return True


def _sectors(labels):
    return ";".join("-" if s is None else str(s) for s in labels)


def scan_frame(rows):
    """DataFrame of ``stokes_scan`` rows with sectors flattened to text."""
    return pd.DataFrame({
        "a": [row.a for row in rows],
        "connected": [row.connected for row in rows],
        "plus_sectors": [_sectors(row.plus_sectors) for row in rows],
        "minus_sectors": [_sectors(row.minus_sectors) for row in rows],
        "max_drift": [row.max_drift for row in rows],
        "flipped": [row.flipped for row in rows],
    })
