"""
HopfDesk Class

This module defines the HopfDesk class, which runs the tasks of a parsed task document.
The desk validates every structure once, then dispatches each task to the library and
collects a TaskResult per task. A task whose inputs failed validation is aborted without
stopping the others.

Attributes:
- document: The parsed TaskDocument.
- settings: Task defaults and limits (config.settings.DESK).
- validation: Violations found per structure name, empty lists for valid structures.
"""

import logging
from typing import Dict, List

from config.settings import DESK, LOGGING
from util import catmod, equivariant, hcat, homological, hopf, relhopf, spectral
from util.document import (CHECK, COLINEAR, EQUIVARIANT, EXT, HOM, PLAIN, SS, TaskDocument, TaskSpec,
                           base_of, module_kind, validate_entry)
from util.equivariant import EquivModule
from util.errors import ComputationMismatch, DimensionMismatch, InconsistentComplex, StructureError
from util.hcat import CoHCategory
from util.relhopf import RelHopfModule
from util.report import INVALID, MISMATCH, PASS, TaskResult

HOPF = "hopf"
CATEGORY = "category"

SAME_PIPELINE = {
    spectral.T4_18: "computed through the T3_15 pipeline; on finite carriers the two tables must coincide",
    spectral.T5_9: "computed through the T5_17 inner Ext with injective structures; the two tables must coincide",
}


class HopfDesk:
    def __init__(self, document: TaskDocument, settings: Dict = None, log_settings: Dict = None):
        """
        Initialize HopfDesk with a document.

        Parameters:
        - document (TaskDocument): The parsed task document.
        - settings (dict): Task defaults and limits, DESK when omitted.
        - log_settings (dict): Logger level, file and format, LOGGING when omitted.
        """
        self.document = document
        self.settings = settings or DESK
        self.log_settings = log_settings or LOGGING
        self.logger = self.setup_logger()
        self.validation = self.validate_structures()

    def setup_logger(self):
        """
        Set up logging configuration.

        Returns:
        - logger (logging.Logger): Configured logger object.
        """
        logger = logging.getLogger(__name__)
        logger.setLevel(self.log_settings["level"])
        path = self.log_settings.get("file")
        if path and not any(isinstance(h, logging.FileHandler) for h in logger.handlers):
            formatter = logging.Formatter(self.log_settings["format"])
            file_handler = logging.FileHandler(path)
            file_handler.setLevel(self.log_settings["level"])
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
        return logger

    def validate_structures(self) -> Dict[str, List[str]]:
        """Run every axiom check once; the results gate the tasks."""
        doc = self.document
        report = {HOPF: hopf.check_hopf(doc.hopf)}
        if not report[HOPF]:
            report[HOPF] += [f"dual: {msg}" for msg in hopf.check_hopf(hopf.dual_hopf(doc.hopf))]
        category = hcat.validate_category(doc.category.base)
        category += hcat.validate_h_structure(doc.category)
        if isinstance(doc.category, CoHCategory) and not category:
            category += [f"dualized: {msg}" for msg in hcat.validate_h_structure(hcat.dualize_coh_category(doc.category))]
        report[CATEGORY] = category
        for name, M in doc.modules.items():
            report[name] = validate_entry(M)
        for name, problems in report.items():
            if problems:
                self.logger.warning(f"{name} failed validation: {len(problems)} violation(s)")
        return report

    def run(self) -> List[TaskResult]:
        return [self.run_task(task) for task in self.document.tasks]

    def run_task(self, task: TaskSpec) -> TaskResult:
        """
        Run one task, turning library errors into a status.

        Returns:
        - TaskResult: pass, mismatch (two computations disagree or one of them fails) or invalid
          (inputs that do not fit the task).
        """
        self.logger.info(f"Task {task.index}: {task.kind} {task.inputs()}")
        result = TaskResult(task.index, task.kind, task.inputs())
        if task.kind != CHECK:
            blocked = [name for name in (HOPF, CATEGORY, task.source, task.target) if self.validation.get(name)]
            if blocked:
                result.status = INVALID
                result.messages.append(f"aborted: {', '.join(blocked)} failed validation")
                return result
        handlers = {CHECK: self.check, HOM: self.hom, EXT: self.ext, SS: self.ss}
        try:
            handlers[task.kind](task, result)
        except (ComputationMismatch, InconsistentComplex) as e:
            self.logger.error(f"Task {task.index}: {e}")
            result.status = MISMATCH
            result.messages.append(str(e))
        except DimensionMismatch as e:
            self.logger.error(f"Task {task.index}: computation failed: {e}")
            result.status = MISMATCH
            result.messages.append(f"computation failed: {e}")
        except (StructureError, ValueError) as e:
            self.logger.error(f"Task {task.index}: invalid input: {e}")
            result.status = INVALID
            result.messages.append(f"invalid input: {e}")
        self.logger.info(f"Task {task.index}: {result.status}")
        return result

    def check(self, task: TaskSpec, result: TaskResult) -> None:
        doc = self.document
        result.values["hopf"] = f"{doc.hopf.name or 'H'} (dim {doc.hopf.dim})"
        result.values["category total dim"] = doc.category.base.total_dim
        for name, problems in self.validation.items():
            result.values[f"valid {name}"] = not problems
            result.messages += [f"{name}: {msg}" for msg in problems]
        if result.messages:
            result.status = INVALID

    def _pair(self, task: TaskSpec):
        return self.document.modules[task.source], self.document.modules[task.target]

    def hom(self, task: TaskSpec, result: TaskResult) -> None:
        M, N = self._pair(task)
        mode = task.mode
        if mode is None:
            if isinstance(M, EquivModule) and isinstance(N, EquivModule):
                mode = EQUIVARIANT
            elif isinstance(M, RelHopfModule) and isinstance(N, RelHopfModule):
                mode = COLINEAR
            else:
                mode = PLAIN
        result.inputs["mode"] = mode
        result.values["source kind"] = module_kind(M)
        result.values["target kind"] = module_kind(N)
        if mode == PLAIN:
            result.values["hom dim"] = catmod.module_hom_basis(base_of(M), base_of(N)).dim
        elif mode == EQUIVARIANT:
            self._equivariant_hom(M, N, result)
        else:
            self._colinear_hom(M, N, result)

    def _equivariant_hom(self, M, N, result: TaskResult) -> None:
        if not (isinstance(M, EquivModule) and isinstance(N, EquivModule)):
            raise ValueError("Equivariant Hom needs two equivariant modules")
        action = equivariant.hom_h_action(M, N)
        smash = equivariant.smash_hom_subspace(M, N, action.space)
        _, whole = equivariant.locally_finite_hom(M, N)
        same = equivariant.verify_invariant_hom(M, N)
        result.cites = "invariant Hom = smash Hom"
        result.values.update({
            "hom dim": action.space.dim,
            "invariant dim": action.invariants.shape[1],
            "smash hom dim": smash.shape[1],
            "invariants equal smash hom": same,
            "hom is locally finite": whole,
        })
        if not same or not whole:
            raise ComputationMismatch("Invariant Hom and smash Hom differ as subspaces"
                                      if not same else "Hom has a non-locally-finite part")

    def _colinear_hom(self, M, N, result: TaskResult) -> None:
        if not (isinstance(M, RelHopfModule) and isinstance(N, RelHopfModule)):
            raise ValueError("Colinear Hom needs two relative Hopf modules")
        rational = relhopf.rational_hom(M, N)
        dual_smash = catmod.module_hom_basis(relhopf.to_dual_smash(M), relhopf.to_dual_smash(N)).dim
        colinear = rational.relhopf.shape[1]
        result.cites = "coinvariant HOM = relative Hopf Hom"
        result.values.update({
            "hom dim": rational.space.dim,
            "colinear dim": colinear,
            "coinvariant dim": rational.coinvariants.shape[1],
            "dual smash hom dim": dual_smash,
            "coaction is rational": rational.rational,
            "coinvariants equal colinear maps": rational.coinvariants_match,
        })
        if not rational.rational or not rational.coinvariants_match or dual_smash != colinear:
            raise ComputationMismatch("Rational HOM checks failed")

    def ext(self, task: TaskSpec, result: TaskResult) -> None:
        M, N = self._pair(task)
        ext = homological.ext_groups(M, N, task.context, task.degree)
        result.cites = f"Ext in {task.context}"
        result.series["free route"] = ext.dims
        result.series["injective route"] = ext.injective_dims
        if ext.structures is not None:
            label = "invariants" if task.context == homological.MOD_C else "coinvariants"
            result.series[f"{label} of Ext"] = ext.fixed_dims()
        result.values["resolution ranks"] = " ".join(str(r) for r in ext.free.ranks())

    def ss(self, task: TaskSpec, result: TaskResult) -> None:
        M, N = self._pair(task)
        out = spectral.grothendieck_ss(task.theorem, M, N, task.degree)
        result.cites = task.theorem
        result.values["verdict"] = PASS if out.verdict else "fail"
        result.values["reliable through degree"] = out.reliable_through
        for name, ok in sorted(out.checks.items()):
            result.values[f"check {name}"] = ok
        result.series["abutment"] = out.abutment
        result.series["total cohomology"] = out.total
        result.grids["E2 composite"] = out.e2
        result.grids["E2 double complex"] = out.e2_grid
        result.grids["E_inf"] = out.e_inf
        result.unreliable = out.unreliable
        if task.theorem in SAME_PIPELINE:
            result.messages.append(SAME_PIPELINE[task.theorem])
        result.messages += out.mismatches
        if not out.verdict:
            result.status = MISMATCH
