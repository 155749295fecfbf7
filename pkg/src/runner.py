"""Main orchestrator for groupoid-flow runs."""

import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from .dae import LinearDAE, constraint_set, integrate
from .dynamics import ChainMode, ImplicitEquation, classify_point, extract_affine
from .groupoid import CotangentPairGroupoid, GroupoidRealization, PairGroupoid, SE2Group
from .lagrangian import CATALOG, DiscreteLagrangian, HamiltonianSystem, Side, flow_lagrangian_set
from .nonholonomic import SleighParams, sleigh_system
from .numkernel import TolerancePolicy
from .utils import console
from .utils.config import Config
from .utils.errors import (
    ConfigError, GroupoidFlowError, InconclusiveError, NotStabilizedError,
)
from .utils.run_config import RunConfig


@dataclass
class RunResult:
    """Tabular outcome of one run plus the reported state that ended it, if any."""

    subcommand: str
    frame: pd.DataFrame
    text: Optional[str] = None
    failure: Optional[GroupoidFlowError] = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def build_realization(settings: Dict[str, Any]) -> GroupoidRealization:
    if settings['kind'] == 'se2':
        return SE2Group()
    return PairGroupoid(settings['n'])


def build_lagrangian(settings: Dict[str, Any]) -> DiscreteLagrangian:
    """Catalog Lagrangian or expression over the realization's coordinates."""
    parameters = dict(settings.get('parameters', {}))
    if 'catalog' in settings:
        if 'n' in parameters:
            parameters['n'] = int(parameters['n'])
        try:
            return CATALOG[settings['catalog']](**parameters)
        except TypeError as e:
            raise ConfigError(f"lagrangian.parameters: {e}") from e
    realization = build_realization(settings['realization'])
    return DiscreteLagrangian.from_expression(settings['expression'], realization,
                                              parameters=parameters, name=settings.get('name', 'L'))


class GroupoidFlowRunner:
    """Runs one configured job per subcommand."""

    def __init__(self, tol: Optional[TolerancePolicy] = None, seed: int = 0):
        self.tol = tol or Config.tolerances()
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self._jobs: Dict[str, Callable[[RunConfig], RunResult]] = {
            'del': self.run_del,
            'extract': self.run_extract,
            'classify': self.run_classify,
            'dae': self.run_dae,
            'sleigh': self.run_sleigh,
            'flow': self.run_flow,
        }

    def run(self, config: RunConfig) -> RunResult:
        if config.kind not in self._jobs:
            raise ConfigError(f"Unknown subcommand {config.kind!r}")
        self.tol = self.tol.updated(config.tolerances)
        console.step(f"groupoid-flow {config.kind}")
        result = self._jobs[config.kind](config)
        if result.ok:
            console.success(f"{len(result.frame)} rows")
        return result

    def _progress(self, total: int, desc: str) -> tqdm:
        return tqdm(total=total, desc=desc, file=sys.stderr, disable=not Config.VERBOSE, leave=False)

    # Subcommands

    def run_del(self, config: RunConfig) -> RunResult:
        """Lagrangian trajectory by repeated DEL successor solves."""
        L = build_lagrangian(config.get('lagrangian'))
        G = L.realization
        g0 = np.asarray(config.get('initial'), dtype=float)
        G.check_element(g0)
        steps = config.get('steps')

        console.step(f"Evolving {L.name} on {G.name} for {steps} steps")
        with self._progress(steps, "del") as bar:
            elements = L.trajectory(g0, steps, self.tol, on_step=lambda k: bar.update(1))

        frame = pd.DataFrame(np.array(elements), columns=G.coordinate_names)
        frame.insert(0, 'k', range(len(elements)))
        momenta = np.array([L.legendre(g, Side.PLUS).covector for g in elements])
        for i in range(momenta.shape[1]):
            frame[f"p{i}"] = momenta[:, i]
        frame['L'] = [float(L(g)) for g in elements]
        # residual of the step leaving g_k; the last element has none
        frame['del_residual'] = [float(np.max(np.abs(L.del_residual(g, h))))
                                 for g, h in zip(elements, elements[1:])] + [np.nan]
        return RunResult('del', frame)

    def run_extract(self, config: RunConfig) -> RunResult:
        """Constraint chain of an affine equation."""
        G = build_realization(config.get('realization'))
        constraints = config.get('constraints')
        E = ImplicitEquation.from_constraints(G, constraints['matrix'], constraints['rhs'], tol=self.tol)
        report = extract_affine(E, ChainMode(config.get('mode', 'forward')), config.get('max_iter'))

        failure = None
        try:
            report.require_stabilized()
            console.success(f"stabilized at k={report.stabilization_index}, dims C {report.c_dims}")
        except NotStabilizedError as e:
            failure = e
        return RunResult('extract', report.to_frame(), report.to_text(G.coordinate_names), failure)

    def run_classify(self, config: RunConfig) -> RunResult:
        """Forward/backward depth of every configured point."""
        points = [np.asarray(p, dtype=float) for p in config.get('points')]
        if config.get('lagrangian') is not None:
            L = build_lagrangian(config.get('lagrangian'))
            S = L.build_sl()
            E = S.equation.with_tolerances(self.tol)
            names = L.realization.coordinate_names
            for p in points:
                L.realization.check_element(p)
            mapped = [S.point(p) for p in points]
        else:
            G = build_realization(config.get('realization'))
            constraints = config.get('constraints')
            E = ImplicitEquation.from_constraints(G, constraints['matrix'], constraints['rhs'], tol=self.tol)
            names = G.coordinate_names
            mapped = points

        rows: List[Dict[str, Any]] = []
        inconclusive = 0
        with self._progress(len(points), "classify") as bar:
            for index, (p, mu) in enumerate(zip(points, mapped)):
                result = classify_point(E, mu, depth=config.get('depth', 3), seeds=config.get('seeds'),
                                        rng=self.rng, box=config.get('box'), tol=self.tol)
                inconclusive += int(result.inconclusive)
                row = {'point': index}
                row.update(dict(zip(names, p.tolist())))
                row.update({'forward_depth': result.forward_depth,
                            'backward_depth': result.backward_depth,
                            'inconclusive': int(result.inconclusive)})
                rows.append(row)
                bar.update(1)

        failure = InconclusiveError(f"{inconclusive} of {len(points)} points inconclusive") if inconclusive else None
        return RunResult('classify', pd.DataFrame(rows), failure=failure)

    def run_dae(self, config: RunConfig) -> RunResult:
        """Constrained Euler integration of a linear DAE."""
        dae = LinearDAE.from_entries(config.get('A'), config.get('B'), config.get('b'),
                                     t0=config.get('t0', 0.0), h=config.get('h', 0.1))
        result = integrate(dae, config.get('x_guess'), config.get('N'),
                           kind=config.get('annihilator', 'projector'), tol=self.tol)

        columns = [f"x{i + 1}" for i in range(dae.n)]
        frame = pd.DataFrame(np.array(result.trajectory), columns=columns)
        frame.insert(0, 't', result.times)
        frame.insert(0, 'k', range(len(result.trajectory)))
        frame['constraint_residual'] = [constraint_set(dae, k, tol=self.tol).residual(x)
                                        for k, x in enumerate(result.trajectory)]
        frame['regular'] = [int(result.reports[k].regular) if k < len(result.reports) else 1
                            for k in range(len(result.trajectory))]

        failure = None
        try:
            result.require_complete()
        except GroupoidFlowError as e:
            failure = e
        return RunResult('dae', frame, failure=failure)

    def run_sleigh(self, config: RunConfig) -> RunResult:
        """Nonholonomic trajectory of the Chaplygin sleigh."""
        params = SleighParams.from_dict(config.get('params', {}))
        system = sleigh_system(params)
        steps = config.get('steps')

        console.step(f"Sleigh m={params.m} a={params.a} b={params.b} J={params.J}, {steps} steps")
        with self._progress(steps, "sleigh") as bar:
            elements = system.nh_trajectory(config.get('initial'), steps, self.tol,
                                            on_step=lambda k: bar.update(1))

        frame = pd.DataFrame(np.array(elements), columns=SE2Group().coordinate_names)
        frame.insert(0, 'k', range(len(elements)))
        frame['membership'] = [system.manifold.membership(g) for g in elements]
        # residual of the step arriving at g_k
        frame['nh_del_residual'] = [np.nan] + [float(np.linalg.norm(system.nh_del_residual(g, h)))
                                               for g, h in zip(elements, elements[1:])]
        return RunResult('sleigh', frame)

    def run_flow(self, config: RunConfig) -> RunResult:
        """Sample points of the Lagrangian set generated by a Hamiltonian flow."""
        n = config.get('n', 1)
        HS = HamiltonianSystem.from_expression(config.get('hamiltonian'), n, config.get('parameters'))
        rows = flow_lagrangian_set(HS, config.get('t'), config.get('grid'), config.get('steps'))
        frame = pd.DataFrame(rows, columns=CotangentPairGroupoid(n).coordinate_names)
        return RunResult('flow', frame)
