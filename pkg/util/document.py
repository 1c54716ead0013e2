"""
Task documents: one JSON file naming a field, a Hopf algebra, a category, some
modules and an ordered list of tasks. The schema is described in README.md.

Scalars are integers or "p/q" strings. Hom spaces are keyed "X->Y". Matrices are
nested row lists; a right module stores M(f): M(Y) -> M(X) for f: X -> Y, a left
module M(f): M(X) -> M(Y).
"""

import json
import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Tuple

from util import catmod, equivariant, exactlin, fixtures, hopf, hrep, relhopf
from util.catmod import LEFT, RIGHT, CatModule
from util.equivariant import EquivModule
from util.errors import DimensionMismatch, DocumentError, HopfDeskError
from util.exactlin import FieldSpec, Matrix
from util.hcat import CoHCategory, HCategory, build_category
from util.homological import CONTEXTS
from util.hopf import HopfAlgebra
from util.relhopf import RelHopfModule
from util.spectral import THEOREMS

logger = logging.getLogger(__name__)

CHECK = "check"
HOM = "hom"
EXT = "ext"
SS = "ss"
TASK_KINDS = (CHECK, HOM, EXT, SS)

PLAIN = "plain"
EQUIVARIANT = "equivariant"
COLINEAR = "colinear"
HOM_MODES = (PLAIN, EQUIVARIANT, COLINEAR)


@dataclass
class TaskSpec:
    index: int
    kind: str
    source: Optional[str] = None
    target: Optional[str] = None
    context: Optional[str] = None
    theorem: Optional[str] = None
    mode: Optional[str] = None
    degree: Optional[int] = None

    def inputs(self) -> Dict[str, Any]:
        """The parameters worth echoing in a report."""
        keys = ("source", "target", "context", "theorem", "mode", "degree")
        return {k: getattr(self, k) for k in keys if getattr(self, k) is not None}


@dataclass(frozen=True, eq=False)
class TaskDocument:
    name: str
    field: FieldSpec
    hopf: HopfAlgebra
    category: Any
    modules: Dict[str, Any]
    tasks: List[TaskSpec] = dc_field(default_factory=list)

    @property
    def is_coh(self) -> bool:
        return isinstance(self.category, CoHCategory)


def _locate(text: str, token: str) -> Tuple[Optional[int], Optional[int]]:
    """Line and column of the first occurrence of a JSON string token."""
    pos = text.find(json.dumps(token))
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Reader:
    """Builds a TaskDocument, raising DocumentError with a position when it can."""

    def __init__(self, text: str, name: str, default_degree: int, max_degree: int) -> None:
        self.text = text
        self.name = name
        self.default_degree = default_degree
        self.max_degree = max_degree

    def fail(self, message: str, token: str = None) -> DocumentError:
        line, column = _locate(self.text, token) if token else (None, None)
        return DocumentError(message, line, column)

    def require(self, data: dict, key: str, where: str):
        if not isinstance(data, dict) or key not in data:
            raise self.fail(f"{where} is missing {key!r}", where)
        return data[key]

    # -- field and algebra ---------------------------------------------------

    def read_field(self, data) -> Optional[FieldSpec]:
        if data is None:
            return None
        kind = self.require(data, "kind", "field")
        try:
            if kind == exactlin.RATIONALS:
                return FieldSpec.rationals()
            if kind == exactlin.PRIME:
                return FieldSpec.prime(int(self.require(data, "p", "field")))
        except (HopfDeskError, ValueError) as e:
            raise self.fail(f"Invalid field: {e}", "field")
        raise self.fail(f"Unknown field kind {kind!r}", "kind")

    def read_hopf(self, data, field: Optional[FieldSpec]) -> HopfAlgebra:
        if "fixture" in data:
            H = fixtures.named_hopf(data["fixture"]) if data["fixture"] in fixtures.HOPF_FIXTURES else None
            if H is None:
                raise self.fail(f"Unknown Hopf algebra fixture {data['fixture']!r}", data["fixture"])
            if field is not None and field != H.field:
                raise self.fail(f"Fixture {data['fixture']} lives over {H.field.label}, not {field.label}", "field")
            return H
        if field is None:
            raise self.fail("An explicit Hopf algebra needs a field", "hopf")
        kind = self.require(data, "kind", "hopf")
        try:
            if kind == "structure_constants":
                return hopf.from_structure_constants(
                    field, self.require(data, "labels", "hopf"), self.require(data, "mult", "hopf"),
                    self.require(data, "unit", "hopf"), self.require(data, "comult", "hopf"),
                    self.require(data, "counit", "hopf"), self.require(data, "antipode", "hopf"),
                    data.get("antipode_inv"), data.get("name", ""))
            return hopf.build_named_hopf(kind, field, data.get("table"), data.get("labels"))
        except DocumentError:
            raise
        except HopfDeskError as e:
            raise self.fail(f"Invalid Hopf algebra: {e}", "hopf")

    # -- category ------------------------------------------------------------

    def read_category(self, data, H: HopfAlgebra):
        if "fixture" in data:
            name = data["fixture"]
            if name not in fixtures.CATEGORY_FIXTURES:
                raise self.fail(f"Unknown category fixture {name!r}", name)
            try:
                return fixtures.named_category(name, H)
            except HopfDeskError as e:
                raise self.fail(str(e), name)
        F = H.field
        objects = self.require(data, "objects", "category")
        hom = {self.key(k): v for k, v in self.require(data, "hom", "category").items()}
        products = {}
        for entry in data.get("products", []):
            products[(entry["f"], entry["g"])] = entry.get("value", {})
        try:
            base = build_category(F, objects, hom, products, self.require(data, "identities", "category"),
                                  data.get("name", ""))
            if "coaction" in data:
                coaction = {}
                for key in base.keys():
                    comps = data["coaction"].get(self.label(key))
                    d = base.hom_dim(*key)
                    coaction[key] = self.coaction(comps, H, d) if comps is not None else \
                        hrep.trivial_comodule(H, d).coaction
                return CoHCategory(base, H, coaction)
            action = {}
            for key in base.keys():
                mats = data.get("action", {}).get(self.label(key))
                d = base.hom_dim(*key)
                action[key] = tuple(self.matrix(F, m, d, d) for m in mats) if mats is not None else \
                    hrep.trivial_module(H, d).action
            return HCategory(base, H, action)
        except DocumentError:
            raise
        except HopfDeskError as e:
            raise self.fail(f"Invalid category: {e}", "category")

    def key(self, text: str) -> Tuple[str, str]:
        parts = text.split("->")
        if len(parts) != 2:
            raise self.fail(f"Hom key {text!r} must look like 'X->Y'", text)
        return parts[0].strip(), parts[1].strip()

    @staticmethod
    def label(key: Tuple[str, str]) -> str:
        return f"{key[0]}->{key[1]}"

    def matrix(self, F: FieldSpec, rows, n_rows: int, n_cols: int) -> Matrix:
        A = exactlin.matrix(F, rows, n_cols) if rows else exactlin.zeros(F, 0, n_cols)
        if A.shape != (n_rows, n_cols):
            raise DimensionMismatch(f"matrix of shape {A.shape}, expected {(n_rows, n_cols)}")
        return A

    def coaction(self, comps, H: HopfAlgebra, d: int) -> Matrix:
        """Stack per-basis coefficient maps into a (d*n) x d coaction."""
        F, n = H.field, H.dim
        if len(comps) != n:
            raise DimensionMismatch(f"{len(comps)} coaction components for a {n}-dimensional H")
        rho = exactlin.zeros(F, d * n, d)
        for i, comp in enumerate(comps):
            rho[i::n, :] = self.matrix(F, comp, d, d)
        return rho

    # -- modules -------------------------------------------------------------

    def read_module(self, name: str, data, category):
        if "fixture" in data:
            fixture = data["fixture"]
            if fixture not in fixtures.MODULE_FIXTURES:
                raise self.fail(f"Unknown module fixture {fixture!r}", fixture)
            return fixtures.named_module(fixture, category)
        coh = isinstance(category, CoHCategory)
        side = LEFT if coh else RIGHT
        C, H = category.base, category.hopf
        F = C.field
        if "representable" in data:
            X = data["representable"]
            if X not in C.objects:
                raise self.fail(f"Module {name} names unknown object {X!r}", X)
            if coh:
                return relhopf.relhopf_representable(category, X)
            return equivariant.equivariant_representable(category, X)
        carrier = self.require(data, "carrier", name)
        missing = [X for X in C.objects if X not in carrier]
        if missing:
            raise self.fail(f"Module {name} has no carrier at {missing}", name)
        labelled = data.get("action", {})
        action = {}
        for key in C.keys():
            X, Y = key
            rows, cols = (carrier[X], carrier[Y]) if side == RIGHT else (carrier[Y], carrier[X])
            mats = []
            for label in C.hom_basis[key]:
                if label not in labelled:
                    raise self.fail(f"Module {name} gives no matrix for {label!r}", name)
                mats.append(self.matrix(F, labelled[label], rows, cols))
            action[key] = tuple(mats)
        base = CatModule(C, side, dict(carrier), action, name)
        if coh and "comodule" in data:
            hcomod = {X: hrep.HComodule(H, carrier[X], self.coaction(data["comodule"][X], H, carrier[X]))
                      for X in C.objects}
            return RelHopfModule(category, base, hcomod)
        if not coh and "h" in data:
            hmod = {X: hrep.HModule(H, carrier[X], tuple(self.matrix(F, m, carrier[X], carrier[X])
                                                         for m in data["h"][X])) for X in C.objects}
            return EquivModule(category, base, hmod)
        return base

    # -- tasks ---------------------------------------------------------------

    def read_task(self, index: int, data, modules: Dict[str, Any]) -> TaskSpec:
        kind = self.require(data, "kind", f"task {index}")
        if kind not in TASK_KINDS:
            raise self.fail(f"Task {index} has unknown kind {kind!r}", kind)
        task = TaskSpec(index, kind)
        if kind == CHECK:
            return task
        for end in ("source", "target"):
            name = self.require(data, end, f"task {index}")
            if name not in modules:
                raise self.fail(f"Task {index} refers to unknown module {name!r}", name)
            setattr(task, end, name)
        if kind == HOM:
            task.mode = data.get("mode")
            if task.mode is not None and task.mode not in HOM_MODES:
                raise self.fail(f"Task {index} has unknown hom mode {task.mode!r}", task.mode)
            return task
        degree = data.get("degree", self.default_degree)
        if not isinstance(degree, int) or degree < 0:
            raise self.fail(f"Task {index} degree must be a non-negative integer", "degree")
        if degree > self.max_degree:
            raise self.fail(f"Task {index} degree {degree} exceeds the limit {self.max_degree}", "degree")
        task.degree = degree
        if kind == EXT:
            task.context = self.require(data, "context", f"task {index}")
            if task.context not in CONTEXTS:
                raise self.fail(f"Task {index} has unknown context {task.context!r}", task.context)
        else:
            task.theorem = self.require(data, "theorem", f"task {index}")
            if task.theorem not in THEOREMS:
                raise self.fail(f"Task {index} has unknown theorem {task.theorem!r}", task.theorem)
        return task

    def read(self) -> TaskDocument:
        try:
            data = json.loads(self.text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"Invalid JSON: {e.msg}", e.lineno, e.colno)
        if not isinstance(data, dict):
            raise DocumentError("A task document must be a JSON object", 1, 1)
        field = self.read_field(data.get("field"))
        H = self.read_hopf(self.require(data, "hopf", "document"), field)
        category = self.read_category(self.require(data, "category", "document"), H)
        modules = {}
        for name, entry in data.get("modules", {}).items():
            try:
                modules[name] = self.read_module(name, entry, category)
            except DocumentError:
                raise
            except (HopfDeskError, KeyError, TypeError) as e:
                raise self.fail(f"Invalid module {name}: {e}", name)
        tasks = [self.read_task(i + 1, t, modules) for i, t in enumerate(data.get("tasks", []))]
        logger.info(f"Loaded {self.name}: {len(modules)} modules, {len(tasks)} tasks")
        return TaskDocument(self.name, H.field, H, category, modules, tasks)


def parse_document(text: str, name: str = "<document>", default_degree: int = 3, max_degree: int = 5) -> TaskDocument:
    """
    Parse and build a task document.

    Raises:
        DocumentError: On malformed JSON, unknown names, bad shapes or out-of-range degrees.
    """
    return _Reader(text, name, default_degree, max_degree).read()


def load_document(path: str, default_degree: int = 3, max_degree: int = 5) -> TaskDocument:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise DocumentError(f"Cannot read {path}: {e.strerror}")
    return parse_document(text, path, default_degree, max_degree)


def module_kind(M) -> str:
    if isinstance(M, EquivModule):
        return "equivariant"
    if isinstance(M, RelHopfModule):
        return "relhopf"
    return f"{M.side} module" if isinstance(M, CatModule) else type(M).__name__


def base_of(M) -> CatModule:
    return M.base if isinstance(M, (EquivModule, RelHopfModule)) else M


def validate_entry(M) -> List[str]:
    """Every law the module is supposed to satisfy."""
    report = catmod.validate_module(base_of(M))
    if isinstance(M, EquivModule):
        for X, V in M.hmod.items():
            report += [f"H-module at {X}: {msg}" for msg in hrep.validate_module(V)]
        report += equivariant.validate_equivariant(M)
    elif isinstance(M, RelHopfModule):
        for X, W in M.hcomod.items():
            report += [f"comodule at {X}: {msg}" for msg in hrep.validate_comodule(W)]
        report += relhopf.validate_relhopf(M)
    return report


def build_task(document: TaskDocument, data: Dict[str, Any], index: int = 1, default_degree: int = 3,
               max_degree: int = 5) -> TaskSpec:
    """
    A single task against an already loaded document, as given on a command line.

    Raises:
        DocumentError: For unknown modules, contexts or theorems, or a bad degree.
    """
    return _Reader("", document.name, default_degree, max_degree).read_task(index, data, document.modules)
