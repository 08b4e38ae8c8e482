"""Canonical JSON interchange.

The document shape::

    { "format": "bmc-model", "version": 1,
      "enterprise": { "name": str, "business_models": [BM] } }
    BM := { "name": str,
            "elements": [ { "id", "kind", "name", "desc"?, "vrin"?,
                            "children"? } ],
            "relationships": [ { "source", "target", "kind", "label"? } ],
            "business_models"?: [BM] }

Keys are emitted in that fixed order; optional keys are omitted when
empty. Loading is strict: unknown keys, wrong types, and bad enum values
are rejected with an E007 diagnostic carrying a JSON path. Namespace and
policy problems are left to the validator so a structurally odd but
well-shaped file still loads for diagnosis.
"""
from __future__ import annotations

import json

from .. import diagnostics as dc
from ..diagnostics import Diagnostic, error
from ..model import (
    BusinessModel,
    Element,
    ElementKind,
    Enterprise,
    Relationship,
    RelationshipKind,
    Span,
    VrinAnnotation,
)

FORMAT_NAME = "bmc-model"
FORMAT_VERSION = 1


def to_obj(enterprise: Enterprise) -> dict:
    """The canonical JSON document as a Python object."""
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "enterprise": {
            "name": enterprise.name,
            "business_models": [_bm_to_obj(bm) for bm in enterprise.business_models],
        },
    }


def to_json(enterprise: Enterprise) -> str:
    return json.dumps(to_obj(enterprise), indent=2, ensure_ascii=False) + "\n"


def _bm_to_obj(bm: BusinessModel) -> dict:
    obj = {
        "name": bm.name,
        "elements": [_element_to_obj(e) for e in bm.elements],
        "relationships": [_rel_to_obj(r) for r in bm.relationships],
    }
    if bm.business_models:
        obj["business_models"] = [_bm_to_obj(nested) for nested in bm.business_models]
    return obj


def _element_to_obj(element: Element) -> dict:
    obj: dict = {"id": element.id, "kind": element.kind.keyword, "name": element.name}
    if element.description is not None:
        obj["desc"] = element.description
    if element.vrin is not None:
        obj["vrin"] = element.vrin.as_list()
    if element.children:
        obj["children"] = [_element_to_obj(child) for child in element.children]
    return obj


def _rel_to_obj(rel: Relationship) -> dict:
    obj: dict = {"source": rel.source, "target": rel.target, "kind": rel.kind.value}
    if rel.label is not None:
        obj["label"] = rel.label
    return obj


def from_json(text: str) -> tuple[Enterprise, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        diags.append(error(dc.E_SYNTAX, f"malformed JSON: {exc.msg}",
                           span=Span(offset, min(offset + 1, len(text.encode("utf-8"))))))
        return Enterprise(""), diags

    loader = _Loader(diags)
    enterprise = loader.load_document(doc)
    return enterprise, diags


class _Loader:
    def __init__(self, diags: list[Diagnostic]) -> None:
        self.diags = diags

    def fail(self, path: str, message: str) -> None:
        self.diags.append(error(dc.E_SCHEMA, f"{message} at {path}"))

    def check_keys(self, obj: dict, path: str, required: tuple[str, ...],
                   optional: tuple[str, ...] = ()) -> bool:
        ok = True
        for key in required:
            if key not in obj:
                self.fail(f"{path}.{key}", f"missing required key '{key}'")
                ok = False
        for key in obj:
            if key not in required and key not in optional:
                self.fail(f"{path}.{key}", f"unknown key '{key}'")
                ok = False
        return ok

    def expect(self, value, types, path: str, what: str) -> bool:
        # bool is an int subclass; reject it where an int/str is expected
        if isinstance(value, bool) and bool not in (
            types if isinstance(types, tuple) else (types,)
        ):
            self.fail(path, f"expected {what}")
            return False
        if not isinstance(value, types):
            self.fail(path, f"expected {what}")
            return False
        return True

    def load_document(self, doc) -> Enterprise:
        if not self.expect(doc, dict, "$", "an object"):
            return Enterprise("")
        if not self.check_keys(doc, "$", ("format", "version", "enterprise")):
            return Enterprise("")
        if doc["format"] != FORMAT_NAME:
            self.fail("$.format", f"expected '{FORMAT_NAME}'")
            return Enterprise("")
        version = doc["version"]
        if isinstance(version, bool) or version != FORMAT_VERSION:
            self.fail("$.version", f"expected version {FORMAT_VERSION}")
            return Enterprise("")
        return self.load_enterprise(doc["enterprise"], "$.enterprise")

    def load_enterprise(self, obj, path: str) -> Enterprise:
        if not self.expect(obj, dict, path, "an object"):
            return Enterprise("")
        if not self.check_keys(obj, path, ("name", "business_models")):
            return Enterprise("")
        name = obj["name"] if self.expect(obj["name"], str, f"{path}.name", "a string") else ""
        enterprise = Enterprise(name)
        models = obj["business_models"]
        if self.expect(models, list, f"{path}.business_models", "an array"):
            for i, bm_obj in enumerate(models):
                bm = self.load_bm(bm_obj, f"{path}.business_models[{i}]")
                if bm is not None:
                    enterprise.business_models.append(bm)
        return enterprise

    def load_bm(self, obj, path: str) -> BusinessModel | None:
        if not self.expect(obj, dict, path, "an object"):
            return None
        if not self.check_keys(obj, path, ("name", "elements", "relationships"),
                               ("business_models",)):
            return None
        name = obj["name"] if self.expect(obj["name"], str, f"{path}.name", "a string") else ""
        bm = BusinessModel(name)
        if self.expect(obj["elements"], list, f"{path}.elements", "an array"):
            for i, element_obj in enumerate(obj["elements"]):
                element = self.load_element(element_obj, f"{path}.elements[{i}]")
                if element is not None:
                    bm.elements.append(element)
        if self.expect(obj["relationships"], list, f"{path}.relationships", "an array"):
            for i, rel_obj in enumerate(obj["relationships"]):
                rel = self.load_relationship(rel_obj, f"{path}.relationships[{i}]")
                if rel is not None:
                    bm.relationships.append(rel)
        nested = obj.get("business_models")
        if nested is not None and self.expect(
            nested, list, f"{path}.business_models", "an array"
        ):
            for i, bm_obj in enumerate(nested):
                child = self.load_bm(bm_obj, f"{path}.business_models[{i}]")
                if child is not None:
                    bm.business_models.append(child)
        return bm

    def load_element(self, obj, path: str) -> Element | None:
        if not self.expect(obj, dict, path, "an object"):
            return None
        if not self.check_keys(obj, path, ("id", "kind", "name"),
                               ("desc", "vrin", "children")):
            return None
        if not self.expect(obj["id"], str, f"{path}.id", "a string"):
            return None
        kind = None
        if self.expect(obj["kind"], str, f"{path}.kind", "a string"):
            kind = ElementKind.from_keyword(obj["kind"])
            if kind is None:
                self.fail(f"{path}.kind", f"unknown element kind '{obj['kind']}'")
        if kind is None:
            return None
        name = obj["name"] if self.expect(obj["name"], str, f"{path}.name", "a string") else obj["id"]
        element = Element(obj["id"], kind, name)
        if "desc" in obj and self.expect(obj["desc"], str, f"{path}.desc", "a string"):
            element.description = obj["desc"]
        if "vrin" in obj:
            element.vrin = self.load_vrin(obj["vrin"], f"{path}.vrin")
        if "children" in obj and self.expect(
            obj["children"], list, f"{path}.children", "an array"
        ):
            for i, child_obj in enumerate(obj["children"]):
                child = self.load_element(child_obj, f"{path}.children[{i}]")
                if child is not None:
                    element.children.append(child)
        return element

    def load_vrin(self, value, path: str) -> VrinAnnotation | None:
        if (
            isinstance(value, list)
            and len(value) == 4
            and all(isinstance(flag, bool) for flag in value)
        ):
            return VrinAnnotation(*value)
        self.fail(path, "expected an array of four booleans")
        return None

    def load_relationship(self, obj, path: str) -> Relationship | None:
        if not self.expect(obj, dict, path, "an object"):
            return None
        if not self.check_keys(obj, path, ("source", "target", "kind"), ("label",)):
            return None
        if not self.expect(obj["source"], str, f"{path}.source", "a string"):
            return None
        if not self.expect(obj["target"], str, f"{path}.target", "a string"):
            return None
        kind = None
        if self.expect(obj["kind"], str, f"{path}.kind", "a string"):
            try:
                kind = RelationshipKind(obj["kind"])
            except ValueError:
                self.fail(f"{path}.kind", f"unknown relationship kind '{obj['kind']}'")
        if kind is None:
            return None
        label = None
        if "label" in obj and self.expect(obj["label"], str, f"{path}.label", "a string"):
            label = obj["label"]
        return Relationship(obj["source"], obj["target"], kind, label=label)
