import contextlib
import io
import json
import os
import unittest
from unittest import mock

import main
from desk import HopfDesk
from util.document import build_task, load_document, parse_document
from util.equivariant import EquivModule
from util.errors import ComputationMismatch, DimensionMismatch, DocumentError
from util.report import INVALID, MISMATCH, PASS, exit_code, render

TASKS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "tasks")

BROKEN_HOPF = """{
  "field": {"kind": "rationals"},
  "hopf": {
    "kind": "structure_constants",
    "labels": ["e", "g"],
    "mult": [[[1, 0], [0, 1]], [[0, 1], [0, 1]]],
    "unit": [1, 0],
    "comult": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
    "counit": [1, 1],
    "antipode": [[1, 0], [0, 1]]
  },
  "category": {"fixture": "C1"},
  "modules": {"trivial": {"fixture": "trivial"}},
  "tasks": [
    {"kind": "check"},
    {"kind": "hom", "source": "trivial", "target": "trivial"}
  ]
}
"""

BROKEN_MODULE = """{
  "hopf": {"fixture": "F1"},
  "category": {"fixture": "C2fix"},
  "modules": {
    "T": {"fixture": "T"},
    "R": {"fixture": "R"},
    "bad": {"carrier": {"o": 1}, "action": {"1": [[1]], "x": [[1]]}, "h": {"o": [[[1]], [[1]]]}}
  },
  "tasks": [
    {"kind": "hom", "source": "bad", "target": "bad"},
    {"kind": "ext", "source": "R", "target": "T", "context": "mod_c", "degree": 1}
  ]
}
"""


def document_text(tasks):
    return json.dumps({"hopf": {"fixture": "F1"}, "category": {"fixture": "C2fix"},
                       "modules": {"T": {"fixture": "T"}, "R": {"fixture": "R"}}, "tasks": tasks}, indent=2)


class TestDocuments(unittest.TestCase):
    def test_fixture_documents_load(self):
        for name in sorted(os.listdir(TASKS)):
            document = load_document(os.path.join(TASKS, name))
            self.assertTrue(document.tasks, name)

    def test_explicit_document(self):
        document = load_document(os.path.join(TASKS, "explicit_two_objects.json"))
        self.assertIsInstance(document.modules["S_A"], EquivModule)
        self.assertEqual(document.category.base.hom_dim("A", "B"), 1)

    def test_malformed_json_has_a_position(self):
        with self.assertRaises(DocumentError) as ctx:
            parse_document('{\n  "hopf": {"fixture": "F1"},\n  "category": \n}')
        self.assertEqual(ctx.exception.line, 4)
        self.assertIsNotNone(ctx.exception.column)

    def test_unknown_fixture_is_located(self):
        text = '{\n  "hopf": {"fixture": "F9"},\n  "category": {"fixture": "C2fix"}\n}'
        with self.assertRaises(DocumentError) as ctx:
            parse_document(text)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 23))
        self.assertIn("line 2, column 23", str(ctx.exception))

    def test_task_errors(self):
        bad_tasks = [
            {"kind": "ext", "source": "T", "target": "T", "context": "mod_c", "degree": 9},
            {"kind": "ext", "source": "T", "target": "Z", "context": "mod_c"},
            {"kind": "ext", "source": "T", "target": "T", "context": "mod_everything"},
            {"kind": "ss", "source": "T", "target": "T", "theorem": "T9_99"},
            {"kind": "hom", "source": "T", "target": "T", "mode": "sideways"},
            {"kind": "integrate"},
        ]
        for task in bad_tasks:
            with self.assertRaises(DocumentError, msg=task):
                parse_document(document_text([task]))

    def test_default_degree(self):
        document = parse_document(document_text([{"kind": "ext", "source": "T", "target": "T", "context": "mod_c"}]),
                                  default_degree=2)
        self.assertEqual(document.tasks[0].degree, 2)

    def test_bad_hom_key(self):
        text = json.dumps({"field": {"kind": "rationals"}, "hopf": {"fixture": "F1"},
                           "category": {"objects": ["A"], "hom": {"A-A": ["id"]}, "identities": {"A": "id"}}})
        with self.assertRaises(DocumentError):
            parse_document(text)

    def test_fixture_over_the_wrong_field(self):
        text = json.dumps({"field": {"kind": "prime", "p": 3}, "hopf": {"fixture": "F1"},
                           "category": {"fixture": "C2fix"}})
        with self.assertRaises(DocumentError):
            parse_document(text)

    def test_missing_file(self):
        with self.assertRaises(DocumentError):
            load_document(os.path.join(TASKS, "missing.json"))


class TestHopfDesk(unittest.TestCase):
    def test_c2fix_document_passes(self):
        desk = HopfDesk(load_document(os.path.join(TASKS, "c2fix_t3_15.json")))
        results = desk.run()
        self.assertEqual([r.status for r in results], [PASS] * len(results), [r.messages for r in results])
        self.assertEqual(exit_code(results), 0)
        hom = results[1]
        self.assertEqual(hom.inputs["mode"], "equivariant")
        self.assertEqual(hom.values["hom dim"], 1)
        self.assertEqual(hom.values["invariant dim"], 1)
        self.assertEqual(results[2].values["invariant dim"], 0)

    def test_relative_hopf_document_passes(self):
        desk = HopfDesk(load_document(os.path.join(TASKS, "d1_relhopf.json")))
        results = desk.run()
        self.assertEqual(exit_code(results), 0, [r.messages for r in results])

    def test_broken_hopf_algebra_is_invalid(self):
        desk = HopfDesk(parse_document(BROKEN_HOPF))
        results = desk.run()
        self.assertEqual([r.status for r in results], [INVALID, INVALID])
        self.assertTrue(any(msg.startswith("hopf: antipode identity fails") for msg in results[0].messages))
        self.assertIn("aborted", results[1].messages[0])
        self.assertEqual(exit_code(results), 2)

    def test_broken_module_only_blocks_its_own_tasks(self):
        desk = HopfDesk(parse_document(BROKEN_MODULE))
        self.assertIn("composition law fails on x o x", desk.validation["bad"])
        results = desk.run()
        self.assertEqual([r.status for r in results], [INVALID, PASS])
        self.assertEqual(exit_code(results), 2)

    def test_wrong_context_is_invalid(self):
        document = load_document(os.path.join(TASKS, "d1_relhopf.json"))
        task = build_task(document, {"kind": "ext", "source": "M1", "target": "M1", "context": "mod_smash",
                                     "degree": 1})
        result = HopfDesk(document).run_task(task)
        self.assertEqual(result.status, INVALID)

    def test_mismatch_status(self):
        document = parse_document(document_text([{"kind": "ss", "theorem": "T3_15", "source": "T", "target": "T",
                                                  "degree": 1}]))
        with mock.patch("desk.spectral.grothendieck_ss", side_effect=ComputationMismatch("forced")):
            results = HopfDesk(document).run()
        self.assertEqual(results[0].status, MISMATCH)
        self.assertEqual(exit_code(results), 1)

    def test_failed_computation_is_not_invalid_input(self):
        document = parse_document(document_text([{"kind": "ext", "source": "T", "target": "T", "context": "mod_c",
                                                  "degree": 1}]))
        failure = DimensionMismatch("Cannot multiply (2, 1) by (2, 1)")
        with mock.patch("desk.homological.ext_groups", side_effect=failure):
            results = HopfDesk(document).run()
        self.assertEqual(results[0].status, MISMATCH)
        self.assertFalse(any(msg.startswith("invalid input") for msg in results[0].messages))
        self.assertEqual(exit_code(results), 1)

    def test_json_report_is_deterministic(self):
        path = os.path.join(TASKS, "f2_group_cohomology.json")
        first = render(path, HopfDesk(load_document(path)).run(), "json")
        second = render(path, HopfDesk(load_document(path)).run(), "json")
        self.assertEqual(first, second)
        report = json.loads(first)
        self.assertEqual(report["exit_code"], 0)
        ss = [t for t in report["tasks"] if t["kind"] == "ss"][0]
        self.assertEqual(ss["series"]["abutment"], [1, 1, 1, 1])
        self.assertIn("(1,0)", ss["grids"]["E2 composite"])

    def test_text_report(self):
        path = os.path.join(TASKS, "f2_group_cohomology.json")
        text = render(path, HopfDesk(load_document(path)).run(), "text")
        self.assertTrue(text.endswith("exit code: 0\n"))
        self.assertIn("E_inf:", text)


class TestCommandLine(unittest.TestCase):
    def run_main(self, argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
            code = main.main(argv)
        return code, out.getvalue()

    def test_equivariant_hom(self):
        code, out = self.run_main(["hom", os.path.join(TASKS, "c2fix_t3_15.json"), "--source", "T", "--target", "R",
                                   "--equivariant", "--format", "json"])
        self.assertEqual(code, 0)
        values = json.loads(out)["tasks"][0]["values"]
        self.assertEqual(values["hom dim"], 1)
        self.assertEqual(values["invariant dim"], 0)

    def test_plain_hom_by_default(self):
        code, out = self.run_main(["hom", os.path.join(TASKS, "c2fix_t3_15.json"), "--source", "R", "--target", "R",
                                   "--format", "json"])
        self.assertEqual(code, 0)
        task = json.loads(out)["tasks"][0]
        self.assertEqual(task["inputs"]["mode"], "plain")
        self.assertEqual(task["values"]["hom dim"], 2)

    def test_ext(self):
        code, out = self.run_main(["ext", os.path.join(TASKS, "f2_group_cohomology.json"), "--source", "trivial",
                                   "--target", "trivial", "--context", "mod_smash", "--degree", "2",
                                   "--format", "json"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["tasks"][0]["series"]["free route"], [1, 1, 1])

    def test_unknown_module_exits_with_invalid(self):
        code, out = self.run_main(["ext", os.path.join(TASKS, "f2_group_cohomology.json"), "--source", "nobody",
                                   "--target", "trivial", "--context", "mod_c"])
        self.assertEqual(code, 2)
        self.assertEqual(out, "")

    def test_missing_document(self):
        code, _ = self.run_main(["check", os.path.join(TASKS, "missing.json")])
        self.assertEqual(code, 2)


if __name__ == '__main__':
    unittest.main()
