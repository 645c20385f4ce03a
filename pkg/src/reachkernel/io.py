"""
JSON instance and kernel files.

Files are written canonically (sorted keys, sorted id lists, compact
separators) so equal objects give equal bytes; the instance digest is the
SHA-256 of those bytes.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .instances import IntersectionInstance, MatchingInstance
from .laminar import NormalizationWarning
from .matroids import (
    Cographic,
    Graphic,
    Laminar,
    MalformedInputError,
    Matroid,
    Partition,
    Restriction,
    Transversal,
    Truncation,
    Uniform,
)
from .sampling import Kernel

__all__ = [
    "FORMAT_VERSION",
    "InstanceFormatError",
    "instance_to_dict",
    "instance_from_dict",
    "dumps_instance",
    "loads_instance",
    "parse_instance",
    "write_instance",
    "instance_digest",
    "matroid_from_descriptor",
    "KernelFile",
    "kernel_file",
    "read_kernel",
    "write_kernel",
]

FORMAT_VERSION = 1

_ids = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_edges = {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0},
                                     "minItems": 2, "maxItems": 2}}

MATROID_SCHEMA = {
    "type": "object",
    "required": ["type"],
    "properties": {"type": {"enum": ["uniform", "partition", "graphic", "cographic", "transversal",
                                     "laminar", "restriction", "truncation"]}},
    "allOf": [
        {"if": {"properties": {"type": {"const": "uniform"}}},
         "then": {"required": ["n", "rank"], "additionalProperties": False,
                  "properties": {"type": {}, "n": {"type": "integer", "minimum": 0},
                                 "rank": {"type": "integer", "minimum": 0}}}},
        {"if": {"properties": {"type": {"const": "partition"}}},
         "then": {"required": ["n", "blocks"], "additionalProperties": False,
                  "properties": {"type": {}, "n": {"type": "integer", "minimum": 0},
                                 "blocks": {"type": "array", "items": _ids},
                                 "caps": _ids}}},
        {"if": {"properties": {"type": {"enum": ["graphic", "cographic"]}}},
         "then": {"required": ["vertices", "edges"], "additionalProperties": False,
                  "properties": {"type": {}, "vertices": {"type": "integer", "minimum": 0},
                                 "edges": _edges}}},
        {"if": {"properties": {"type": {"const": "transversal"}}},
         "then": {"required": ["adjacency"], "additionalProperties": False,
                  "properties": {"type": {}, "right": {"type": "integer", "minimum": 0},
                                 "adjacency": {"type": "array", "items": _ids}}}},
        {"if": {"properties": {"type": {"const": "laminar"}}},
         "then": {"required": ["n", "sets"], "additionalProperties": False,
                  "properties": {"type": {}, "n": {"type": "integer", "minimum": 0},
                                 "sets": {"type": "array", "items": {
                                     "type": "object", "required": ["elements", "cap"],
                                     "additionalProperties": False,
                                     "properties": {"elements": _ids,
                                                    "cap": {"type": "integer", "minimum": 0}}}}}}},
        {"if": {"properties": {"type": {"const": "restriction"}}},
         "then": {"required": ["subset", "inner"], "additionalProperties": False,
                  "properties": {"type": {}, "subset": _ids, "inner": {"$ref": "#/$defs/matroid"}}}},
        {"if": {"properties": {"type": {"const": "truncation"}}},
         "then": {"required": ["bound", "inner"], "additionalProperties": False,
                  "properties": {"type": {}, "bound": {"type": "integer", "minimum": 1},
                                 "inner": {"$ref": "#/$defs/matroid"}}}},
    ],
}

INSTANCE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"matroid": MATROID_SCHEMA},
    "type": "object",
    "required": ["version", "kind", "n", "k", "weights", "matroids"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "kind": {"enum": ["intersection", "matching"]},
        "n": {"type": "integer", "minimum": 0},
        "k": {"type": "integer", "minimum": 1},
        "weights": _ids,
        "matroids": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/matroid"}},
        "graph": {"type": "object", "required": ["vertices", "edges"], "additionalProperties": False,
                  "properties": {"vertices": {"type": "integer", "minimum": 0}, "edges": _edges}},
    },
    "if": {"properties": {"kind": {"const": "matching"}}},
    "then": {"required": ["graph"], "properties": {"matroids": {"maxItems": 1}}},
    "else": {"not": {"required": ["graph"]}},
}

KERNEL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "instance_digest", "algorithm", "seed", "T", "repeat", "elements"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "instance_digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "algorithm": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "T": {"type": "integer", "minimum": 0},
        "repeat": {"type": "integer", "minimum": 1},
        "elements": _ids,
        "round_log": _ids,
    },
}

_instance_validator = jsonschema.Draft202012Validator(INSTANCE_SCHEMA)
_kernel_validator = jsonschema.Draft202012Validator(KERNEL_SCHEMA)


class InstanceFormatError(ValueError):
    """Malformed instance or kernel document; the message names the offending field."""


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<document>"


def _validate(validator, doc) -> None:
    best = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if best is not None:
        raise InstanceFormatError(f"{_path(best.absolute_path)}: {best.message}")


def _canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def matroid_from_descriptor(desc: dict) -> Matroid:
    t = desc["type"]
    if t == "uniform":
        return Uniform(desc["n"], desc["rank"])
    if t == "partition":
        return Partition(desc["blocks"], desc.get("caps"), n=desc["n"])
    if t == "graphic":
        return Graphic(desc["vertices"], desc["edges"])
    if t == "cographic":
        return Cographic(desc["vertices"], desc["edges"])
    if t == "transversal":
        return Transversal(desc["adjacency"], desc.get("right"))
    if t == "laminar":
        return Laminar(desc["n"], [(s["elements"], s["cap"]) for s in desc["sets"]])
    if t == "restriction":
        return Restriction(matroid_from_descriptor(desc["inner"]), desc["subset"])
    if t == "truncation":
        return Truncation(matroid_from_descriptor(desc["inner"]), desc["bound"])
    raise MalformedInputError(f"unknown matroid type {t!r}")


def instance_to_dict(inst) -> dict:
    try:
        matroids = [M.descriptor() for M in inst.matroids]
    except NotImplementedError as exc:
        raise InstanceFormatError("instance uses a matroid with no file representation") from exc
    doc = {
        "version": FORMAT_VERSION,
        "kind": inst.kind,
        "n": inst.n,
        "k": inst.k,
        "weights": [int(v) for v in inst.weights],
        "matroids": matroids,
    }
    if isinstance(inst, MatchingInstance):
        doc["graph"] = {"vertices": inst.num_vertices, "edges": [list(e) for e in inst.edges]}
    return doc


def instance_from_dict(doc: dict, warn_loops: bool = True):
    """Validate ``doc`` against the schema, then build the instance."""
    _validate(_instance_validator, doc)
    n = doc["n"]
    if len(doc["weights"]) != n:
        raise InstanceFormatError(f"weights: expected {n} entries, got {len(doc['weights'])}")
    matroids = []
    for i, desc in enumerate(doc["matroids"]):
        try:
            M = matroid_from_descriptor(desc)
        except MalformedInputError as exc:
            raise InstanceFormatError(f"matroids[{i}]: {exc}") from None
        if M.n != n:
            raise InstanceFormatError(f"matroids[{i}]: describes {M.n} elements, instance has n = {n}")
        matroids.append(M)
    if warn_loops:
        for i, M in enumerate(matroids):
            if M.loops:
                warnings.warn(f"matroids[{i}]: loop elements {sorted(M.loops)} removed from the ground set",
                              NormalizationWarning, stacklevel=3)
    try:
        if doc["kind"] == "matching":
            g = doc["graph"]
            return MatchingInstance(g["vertices"], g["edges"], matroids[0], doc["weights"], doc["k"])
        return IntersectionInstance(matroids, doc["weights"], doc["k"])
    except MalformedInputError as exc:
        field = "graph" if doc["kind"] == "matching" else "instance"
        raise InstanceFormatError(f"{field}: {exc}") from None


def dumps_instance(inst) -> str:
    return _canonical(instance_to_dict(inst))


def loads_instance(text: str, warn_loops: bool = True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc, warn_loops)


def instance_digest(inst) -> str:
    return hashlib.sha256(dumps_instance(inst).encode()).hexdigest()


def parse_instance(path, warn_loops: bool = True):
    return loads_instance(Path(path).read_text(), warn_loops)


def write_instance(inst, path) -> None:
    Path(path).write_text(dumps_instance(inst))


@dataclass(frozen=True)
class KernelFile:
    instance_digest: str
    algorithm: str
    seed: int
    T: int
    repeat: int
    elements: tuple[int, ...]
    round_log: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "instance_digest": self.instance_digest,
            "algorithm": self.algorithm,
            "seed": self.seed,
            "T": self.T,
            "repeat": self.repeat,
            "elements": sorted(self.elements),
            "round_log": list(self.round_log),
        }

    def dumps(self) -> str:
        return _canonical(self.to_dict())

    def check_instance(self, inst) -> None:
        digest = instance_digest(inst)
        if digest != self.instance_digest:
            raise InstanceFormatError(
                f"instance_digest: kernel was built for {self.instance_digest[:12]}..., "
                f"this instance is {digest[:12]}...")
        for e in self.elements:
            if e >= inst.n:
                raise InstanceFormatError(f"elements: id {e} outside the instance's {inst.n} elements")


def kernel_file(inst, kernel: Kernel) -> KernelFile:
    return KernelFile(instance_digest(inst), kernel.algorithm, kernel.seed, kernel.rounds,
                      kernel.repeat, tuple(kernel.sorted()), kernel.round_log)


def read_kernel(path) -> KernelFile:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _validate(_kernel_validator, doc)
    if len(set(doc["elements"])) != len(doc["elements"]):
        raise InstanceFormatError("elements: duplicate ids")
    return KernelFile(doc["instance_digest"], doc["algorithm"], doc["seed"], doc["T"], doc["repeat"],
                      tuple(sorted(doc["elements"])), tuple(doc.get("round_log", ())))


def write_kernel(kf: KernelFile, path) -> None:
    Path(path).write_text(kf.dumps())
