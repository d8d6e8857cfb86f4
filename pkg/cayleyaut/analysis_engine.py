"""
Analysis pipeline: validate -> us -> predicted group -> exhaustive search ->
transitivity -> connectivity -> report
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Any, Callable, Dict, List, NamedTuple, Optional

from .abelian import GroupSpec, aut_stabilizing
from .autgroup import (Permutation, PermutationGroup, brute_force_aut, check_search_size,
                       is_arc_transitive, is_dihedral, is_edge_transitive, is_vertex_transitive)
from .cayley import CayleyGraph, check_us, diameter
from .connect import edge_connectivity, vertex_connectivity
from .models import AnalysisReport, GraphSpecFile, us_json
from .predict import PredictedGroup, compare_groups, predicted_generators, predicted_group
from .settings import Settings, load_settings

logger = logging.getLogger(__name__)


class Prediction(NamedTuple):
    """Predicted group summary; group is only materialized for the comparison"""

    aut_stabilizing_order: int
    order: int
    generators: List[Permutation]
    group: Optional[PredictedGroup] = None


class AnalysisEngine:
    """Runs the full analysis for one graph specification"""

    def __init__(self, settings: Optional[Settings] = None):
        """
        Initialize analysis engine

        Args:
            settings: Caps and search options; loaded from config.yaml when omitted
        """
        self.settings = settings or load_settings()
        self.timings: Dict[str, float] = {}

    @contextmanager
    def _stage(self, name: str):
        start = time.perf_counter()
        yield
        self.timings[name] = time.perf_counter() - start
        logger.info("stage %s took %.3fs", name, self.timings[name])

    def _timed(self, name: str, job: Callable[[], Any]) -> Any:
        with self._stage(name):
            return job()

    def _run_stages(self, jobs: Dict[str, Callable[[], Any]]) -> Dict[str, Any]:
        """Run independent stages, through a thread pool when workers > 1"""
        if self.settings.workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
                futures = {name: pool.submit(self._timed, name, job) for name, job in jobs.items()}
                return {name: future.result() for name, future in futures.items()}
        return {name: self._timed(name, job) for name, job in jobs.items()}

    def build(self, spec_file: GraphSpecFile) -> CayleyGraph:
        return spec_file.build(max_vertices=self.settings.max_construction_vertices)

    def brute_force(self, graph: CayleyGraph) -> PermutationGroup:
        return brute_force_aut(
            graph,
            max_vertices=self.settings.max_brute_force_vertices,
            max_elements=self.settings.max_group_elements,
            refine_depth=self.settings.refine_depth,
            workers=self.settings.workers,
        )

    def predict(self, graph: CayleyGraph, materialize: bool) -> Prediction:
        """
        Aut(H, S) and the predicted group

        Without materialize only |H| * |Aut(H, S)| and a generating set are
        produced, so memory stays linear in |H| for large graphs.
        """
        s = self.settings
        spec: GroupSpec = graph.group
        if materialize:
            predicted = predicted_group(spec, graph.conn, max_connection_set=s.max_connection_set,
                                        max_elements=s.max_group_elements)
            return Prediction(len(predicted.stabilizing), predicted.order,
                              list(predicted.generators), predicted)

        maps = aut_stabilizing(spec, graph.conn.elements, max_connection_set=s.max_connection_set)
        return Prediction(len(maps), spec.order * len(maps), predicted_generators(spec, maps))

    def analyze(self, spec_file: GraphSpecFile, brute: bool = True,
                connectivity: bool = False) -> AnalysisReport:
        """
        Analyze one graph

        Args:
            spec_file: Parsed graph specification
            brute: Run the exhaustive automorphism search
            connectivity: Compute vertex and edge connectivity

        Returns:
            AnalysisReport
        """
        self.timings = {}
        s = self.settings

        with self._stage('validate'):
            graph = self.build(spec_file)
            if brute:
                check_search_size(graph, s.max_brute_force_vertices)
        spec: GroupSpec = graph.group

        jobs = {
            'us': lambda: check_us(spec, graph.conn),
            'predict': lambda: self.predict(graph, materialize=brute),
        }
        if brute:
            jobs['brute_force'] = lambda: self.brute_force(graph)
        results = self._run_stages(jobs)
        us, prediction = results['us'], results['predict']

        report = AnalysisReport(
            input=spec_file.to_dict(),
            group=str(spec),
            label=graph.label,
            vertices=graph.n,
            degree=len(graph.conn),
            edges=graph.edge_count,
            diameter=diameter(graph),
            us=us_json(us),
            aut_stabilizing_order=prediction.aut_stabilizing_order,
            predicted_order=prediction.order,
        )
        report.generators['predicted'] = [list(p.images) for p in prediction.generators]

        aut = None
        if brute:
            aut = results['brute_force']
            with self._stage('compare'):
                verification = compare_groups(spec, us, prediction.group, aut)

            report.aut_order = aut.order
            report.theorem32 = {
                'applicable': verification.theorem_32_applicable,
                'containment': verification.containment,
                'equality': verification.equality,
                'confirmed': verification.theorem_32_confirmed,
            }
            report.stabilizer = {
                'order': verification.stabilizer_order,
                'matches_aut_stabilizing': verification.stabilizer_matches,
            }
            report.generators['aut'] = [list(p.images) for p in aut.generators]

            with self._stage('transitivity'):
                report.vertex_transitive = is_vertex_transitive(graph, aut)
                report.arc_transitive = is_arc_transitive(graph, aut)
                report.edge_transitive = is_edge_transitive(graph, aut)
                if spec.rank == 1:
                    report.dihedral = {'is_dihedral': is_dihedral(aut, graph.n), 'n': graph.n}

        if connectivity:
            with self._stage('connectivity'):
                report.connectivity = {
                    'vertex': vertex_connectivity(graph, group=aut, workers=s.workers),
                    'edge': edge_connectivity(graph),
                }

        report.timings = dict(self.timings)
        return report
