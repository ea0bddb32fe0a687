"""TOML documents for tree models and plain-text datasets."""

from __future__ import annotations

import csv
import io as _io
import sys
from pathlib import Path

import numpy as np
import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .bounds import TailParams
from .model import BinaryCorrelationModel, DiscreteTreeModel
from .tree import Tree, random_tree

FORMAT = "infothresh-tree-model/1"


def model_to_dict(model: DiscreteTreeModel) -> dict:
    doc = {
        "format": FORMAT,
        "kind": "binary" if isinstance(model, BinaryCorrelationModel) else "discrete",
        "p": model.p,
        "alphabet_size": model.alphabet_size,
        "symbols": list(model.symbols),
        "allow_degenerate": model.allow_degenerate,
        "marginals": [[float(v) for v in row] for row in model.node_marginals],
    }
    if model.tail is not None:
        doc["tail"] = {"c": model.tail.c, "c1": model.tail.c1, "c2": model.tail.c2}
    edges = []
    for (i, j), J in model.edge_joints.items():
        entry = {"i": i, "j": j, "joint": [[float(v) for v in row] for row in J]}
        if isinstance(model, BinaryCorrelationModel):
            entry["correlation"] = float(model.correlations[(i, j)])
        edges.append(entry)
    doc["edges"] = edges
    return doc


def dumps_model(model: DiscreteTreeModel) -> str:
    # tomli_w writes floats with repr, so values survive a round trip exactly
    return tomli_w.dumps(model_to_dict(model))


def model_from_dict(doc: dict) -> DiscreteTreeModel:
    """Build a model from a serialized document or a short inline spec.

    Short specs describe binary models: ``shape`` (chain / star /
    uniform_random, with ``p`` and optional ``tree_seed``) or explicit
    ``edge_list``, plus ``correlations`` as a scalar or one value per edge.
    """
    tail = TailParams(**doc["tail"]) if "tail" in doc else None
    allow = bool(doc.get("allow_degenerate", False))
    if "edges" in doc:
        p = int(doc["p"])
        tree = Tree(p, [(e["i"], e["j"]) for e in doc["edges"]])
        if doc.get("kind") == "binary":
            rhos = {(e["i"], e["j"]): e["correlation"] for e in doc["edges"]}
            return BinaryCorrelationModel.from_correlations(tree, rhos, tail=tail, allow_degenerate=allow)
        joints = {(e["i"], e["j"]): np.array(e["joint"], dtype=float) for e in doc["edges"]}
        return DiscreteTreeModel(tree, np.array(doc["marginals"], dtype=float), joints,
                                 symbols=tuple(doc.get("symbols", ())), tail=tail, allow_degenerate=allow)
    if "edge_list" in doc:
        tree = Tree(int(doc["p"]), doc["edge_list"])
    elif "shape" in doc:
        tree = random_tree(int(doc["p"]), doc["shape"], doc.get("tree_seed"))
    else:
        raise ValueError("model spec needs 'edges', 'edge_list' or 'shape'")
    rhos = doc["correlations"]
    if not isinstance(rhos, list):
        rhos = [rhos] * len(tree.edges)
    return BinaryCorrelationModel.from_correlations(tree, rhos, tail=tail, allow_degenerate=allow)


def loads_model(text: str) -> DiscreteTreeModel:
    return model_from_dict(tomllib.loads(text))


def save_model(model: DiscreteTreeModel, path) -> None:
    Path(path).write_text(dumps_model(model))


def load_model(path) -> DiscreteTreeModel:
    return loads_model(Path(path).read_text())


def load_toml(path) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def format_dataset(data, delimiter: str = ",") -> str:
    """Header x1..xp then one row per sample."""
    data = np.asarray(data)
    buf = _io.StringIO()
    w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    w.writerow([f"x{k}" for k in range(1, data.shape[1] + 1)])
    w.writerows(data.tolist())
    return buf.getvalue()


def parse_dataset(text: str, delimiter: str | None = None) -> np.ndarray:
    """Inverse of :func:`format_dataset`; a header line is optional."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("dataset is empty")
    if delimiter is None:
        delimiter = "\t" if "\t" in lines[0] else ","
    rows = list(csv.reader(lines, delimiter=delimiter))
    if rows and not rows[0][0].lstrip("+-").isdigit():
        rows = rows[1:]
    if not rows:
        raise ValueError("dataset has a header but no rows")
    return np.array(rows, dtype=np.int64)
