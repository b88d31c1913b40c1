"""
Identity Validation Module
Runs the algebraic identity checks of the engine and summarizes them in a report.
"""

import json
import random
from datetime import datetime, timezone
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from loguru import logger

from ..config import RunConfig
from ..errors import SingularMatrixError
from ..exact import ExactMatrix, GaussRational, HomPoly, MuScalar, SymMatrix
from ..proj import alpha, brute_force_monomials, chart_compatibility, h0_table, monomial_basis
from ..quadexp import (
    amplitude_residual,
    amplitude_solve,
    cayley_flow_residual,
    cayley_identity_checks,
    mu_coefficient_check,
    oracle_check,
    riccati_residual,
    riccati_solve,
    semigroup_check,
)
from ..star import StarContext, check_jacobi
from ..twistor import IncidenceContext, twistor_commutator_check


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def sample_polynomial(rng: random.Random, nvars: int, max_degree: int, terms: int = 3) -> HomPoly:
    """Random polynomial with small rational coefficients."""
    data: Dict[Tuple[int, ...], GaussRational] = {}
    for _ in range(terms):
        degree = rng.randint(0, max_degree)
        exps = [0] * nvars
        for _ in range(degree):
            exps[rng.randrange(nvars)] += 1
        data[tuple(exps)] = GaussRational(rng.randint(-3, 3)) / rng.randint(1, 3)
    return HomPoly(nvars, data)


def sample_phase(rng: random.Random, nvars: int) -> SymMatrix:
    """Random nonzero symmetric matrix with small rational entries."""
    entries = [[GaussRational(0)] * nvars for _ in range(nvars)]
    for i in range(nvars):
        for j in range(i, nvars):
            entries[i][j] = entries[j][i] = GaussRational(rng.randint(-3, 3)) / rng.randint(1, 3)
    if all(not v for row in entries for v in row):
        entries[0][0] = GaussRational(1)
    return SymMatrix(entries)


class IdentityValidator:
    """Performs identity validations."""

    def __init__(self, config: Optional[RunConfig] = None, seed: int = 0):
        """
        Initialize identity validator.

        Args:
            config: Run configuration; None uses the built-in default
            seed: Seed of the sample polynomials
        """
        self.config = config or RunConfig.default()
        self.rng = random.Random(seed)
        self.validation_results: List[Dict[str, Any]] = []

    def _run_check(self, check_type: str, check: Callable[[], Tuple[bool, Dict[str, Any]]]) -> Dict[str, Any]:
        try:
            passed, details = check()
            result = {
                'check_type': check_type,
                'status': 'PASSED' if passed else 'FAILED',
                **details,
                'timestamp': _timestamp(),
            }
            logger.info(f"{check_type} check {result['status']}")
        except Exception as e:
            logger.error(f"{check_type} check failed: {str(e)}")
            result = {
                'check_type': check_type,
                'status': 'ERROR',
                'error': str(e),
                'timestamp': _timestamp(),
            }
        self.validation_results.append(result)
        return result

    # -- star product ---------------------------------------------------------

    def check_generator_relations(self, ctx: StarContext) -> Dict[str, Any]:
        """[z_a, z_b]_# = mu Lambda^{ab} for every pair."""
        def check():
            lam = ctx.lambda_matrix
            failures = []
            for a in range(ctx.nvars):
                for b in range(ctx.nvars):
                    lhs = ctx.commutator(HomPoly.variable(ctx.nvars, a), HomPoly.variable(ctx.nvars, b))
                    if lhs != lam.entry(a, b).scale(MuScalar.mu(1)):
                        failures.append([a, b])
            return not failures, {'pairs_checked': ctx.nvars ** 2, 'failures': failures}

        return self._run_check('GENERATOR_RELATIONS', check)

    def check_associativity(self, ctx: StarContext, samples: int = 5, max_degree: int = 2) -> Dict[str, Any]:
        """(f # g) # h = f # (g # h) on random samples."""
        def check():
            failures = 0
            for _ in range(samples):
                f, g, h = (sample_polynomial(self.rng, ctx.nvars, max_degree) for _ in range(3))
                if ctx.star(ctx.star(f, g), h) != ctx.star(f, ctx.star(g, h)):
                    failures += 1
            return failures == 0, {'samples': samples, 'failures': failures}

        return self._run_check('ASSOCIATIVITY', check)

    def check_lambda_relation(self, ctx: StarContext, k: int = 2, test_degree: int = 2) -> Dict[str, Any]:
        def check():
            return ctx.check_lambda_relation(k, test_degree), {'k': k, 'test_degree': test_degree}

        return self._run_check('LAMBDA_RELATION', check)

    def check_jacobi(self, ctx: StarContext) -> Dict[str, Any]:
        return self._run_check('JACOBI', lambda: (check_jacobi(ctx.lambda_matrix), {}))

    # -- star exponentials ----------------------------------------------------

    def check_star_exponential(self, ctx: StarContext, a: ExactMatrix, order: int) -> Dict[str, Any]:
        """Closed form against the brute-force star exponential."""
        return self._run_check('STAR_EXP_ORACLE', lambda: (oracle_check(ctx, a, order), {'order': order}))

    def check_semigroup(self, ctx: StarContext, a: ExactMatrix, order: int) -> Dict[str, Any]:
        return self._run_check('SEMIGROUP', lambda: (semigroup_check(ctx, a, order), {'order': order}))

    def check_flow_residuals(self, a: ExactMatrix, b: ExactMatrix, order: int) -> Dict[str, Any]:
        """Riccati, amplitude and Cayley-flow residuals vanish through order K-1."""
        def check():
            q = riccati_solve(a, b, order)
            g = amplitude_solve(a, b, order)
            residuals = {
                'riccati': riccati_residual(q, a).is_zero(),
                'amplitude': amplitude_residual(g, q, a).is_zero(),
                'cayley_flow': cayley_flow_residual(q, a).is_zero(),
            }
            return all(residuals.values()), {'order': order, 'residuals': residuals}

        return self._run_check('FLOW_RESIDUALS', check)

    def check_cayley_identities(self, a: ExactMatrix, order: int) -> Dict[str, Any]:
        def check():
            items = cayley_identity_checks(a, order)
            return all(items.values()), {'order': order, 'items': items}

        return self._run_check('CAYLEY_IDENTITIES', check)

    def check_mu_coefficients(self, ctx: StarContext, a: ExactMatrix, q: ExactMatrix) -> Dict[str, Any]:
        def check():
            parts = mu_coefficient_check(ctx, a, q)
            return all(parts.values()), {'parts': parts, 'phase': q.to_strings()}

        return self._run_check('MU_COEFFICIENTS', check)

    # -- projective side ------------------------------------------------------

    def check_h0_table(self, n_max: int = 4, m_min: int = -3, m_max: int = 8) -> Dict[str, Any]:
        def check():
            table = h0_table(n_max, m_min, m_max)
            mismatches = [
                [int(n), int(m)]
                for n in table.index
                for m in table.columns
                if len(brute_force_monomials(int(n), int(m))) != table.loc[n, m]
            ]
            return not mismatches, {'n_max': n_max, 'm_range': [m_min, m_max], 'mismatches': mismatches}

        return self._run_check('H0_TABLE', check)

    def check_alpha_injectivity(self, n_max: int = 2, d_max: int = 3) -> Dict[str, Any]:
        """alpha separates monomial bases and its chart representatives glue."""
        def check():
            collisions = []
            incompatible = []
            for n in range(n_max + 1):
                for d in range(d_max + 1):
                    basis = list(monomial_basis(n, d))
                    families = [alpha(m) for m in basis]
                    for (i, first), (j, second) in combinations(enumerate(families), 2):
                        if all(x == y for x, y in zip(first, second)):
                            collisions.append([n, d, str(basis[i]), str(basis[j])])
                    for m in basis:
                        for i, j in combinations(range(n + 1), 2):
                            if not chart_compatibility(m, i, j):
                                incompatible.append([n, d, str(m), i, j])
            ok = not collisions and not incompatible
            return ok, {'collisions': collisions, 'incompatible': incompatible}

        return self._run_check('ALPHA_INJECTIVITY', check)

    # -- twistor --------------------------------------------------------------

    def check_twistor_relations(self, d_matrix: ExactMatrix) -> Dict[str, Any]:
        def check():
            return twistor_commutator_check(IncidenceContext(d_matrix)), {}

        return self._run_check('TWISTOR_RELATIONS', check)

    # -- orchestration --------------------------------------------------------

    def _enabled(self, name: str) -> bool:
        return self.config.validation.get(name, {}).get('enabled', True)

    def run_comprehensive_validation(self) -> Dict[str, Any]:
        """
        Run every enabled identity check on the configured data.

        Returns:
            Comprehensive validation results
        """
        config = self.config
        results = {
            'validation_timestamp': _timestamp(),
            'nvars': config.nvars,
            'checks': [],
            'overall_status': 'PASSED',
        }

        try:
            ctx = StarContext.from_matrix(config.lambda_matrix)
            order = config.order
            planned: List[Callable[[], Dict[str, Any]]] = []
            if self._enabled('generator_relations'):
                planned.append(lambda: self.check_generator_relations(ctx))
            if self._enabled('associativity'):
                planned.append(lambda: self.check_associativity(ctx))
            if self._enabled('lambda_relation'):
                planned.append(lambda: self.check_lambda_relation(ctx))
            if self._enabled('jacobi'):
                planned.append(lambda: self.check_jacobi(ctx))
            if config.quad_a is not None:
                planned.extend(self._quadratic_checks(ctx, order))
            if self._enabled('h0_table'):
                planned.append(lambda: self.check_h0_table())
            if self._enabled('alpha'):
                planned.append(lambda: self.check_alpha_injectivity())
            if config.twistor_d is not None and self._enabled('twistor'):
                planned.append(lambda: self.check_twistor_relations(config.twistor_d))

            for run in planned:
                outcome = run()
                results['checks'].append(outcome)
                if outcome['status'] == 'ERROR':
                    results['overall_status'] = 'ERROR'
                elif outcome['status'] == 'FAILED' and results['overall_status'] == 'PASSED':
                    results['overall_status'] = 'FAILED'

            logger.info(f"Comprehensive validation completed with {len(results['checks'])} checks")

        except Exception as e:
            logger.error(f"Comprehensive validation failed: {str(e)}")
            results['overall_status'] = 'ERROR'
            results['error'] = str(e)

        return results

    def _quadratic_checks(self, ctx: StarContext, order: int) -> List[Callable[[], Dict[str, Any]]]:
        config = self.config
        a = config.quad_a
        b = config.quad_b if config.quad_b is not None else ExactMatrix.zeros(config.nvars)
        phase = b if not b.is_zero() else sample_phase(self.rng, config.nvars)
        lam = config.lambda_matrix
        planned = []
        try:
            lam.inverse()
            invertible = True
        except SingularMatrixError:
            invertible = False
            logger.warning("Lambda is singular; skipping closed-form checks")
        if invertible and self._enabled('star_exp_oracle'):
            planned.append(lambda: self.check_star_exponential(ctx, a, order))
        if self._enabled('semigroup'):
            planned.append(lambda: self.check_semigroup(ctx, a, min(order, 4)))
        if self._enabled('flow_residuals'):
            planned.append(lambda: self.check_flow_residuals(-(lam @ a), -(lam @ b), order))
        if self._enabled('cayley'):
            planned.append(lambda: self.check_cayley_identities(lam @ a, order))
        if self._enabled('mu_coefficients'):
            planned.append(lambda: self.check_mu_coefficients(ctx, a, phase))
        return planned

    def generate_report(self, results: List[Dict[str, Any]]) -> Dict[str, Any]:
        """
        Summarize identity check records.

        Besides the status counts the report names the identities that did not
        hold, the truncation orders at which series identities were certified and,
        per check, the detail that locates a failure (order, failing pairs, error message).

        Args:
            results: Check records as returned by the check_* methods

        Returns:
            Summary report
        """
        counts = {'PASSED': 0, 'FAILED': 0, 'ERROR': 0}
        summary = []
        failing = []
        certified_orders: Dict[str, int] = {}
        for result in results:
            status = result.get('status', result.get('overall_status', 'UNKNOWN'))
            name = result.get('check_type')
            if status in counts:
                counts[status] += 1
            entry = {'check_type': name, 'status': status}
            for key in ('order', 'k', 'failures', 'error'):
                if key in result:
                    entry[key] = result[key]
            summary.append(entry)
            if status != 'PASSED':
                failing.append(name)
            elif 'order' in result:
                certified_orders[name] = result['order']

        total = len(results)
        report = {
            'report_timestamp': _timestamp(),
            'nvars': self.config.nvars,
            'total_checks': total,
            'passed_checks': counts['PASSED'],
            'failed_checks': counts['FAILED'],
            'error_checks': counts['ERROR'],
            'failing_identities': failing,
            'certified_orders': certified_orders,
            'check_summary': summary,
            'success_rate': counts['PASSED'] / total if total else 0,
        }
        if failing:
            logger.warning(f"Identities not verified: {', '.join(str(n) for n in failing)}")
        logger.info(f"Identity report: {counts['PASSED']}/{total} checks passed")
        return report

    def export_report(self, report: Dict[str, Any], directory: str = "output") -> Path:
        """Write the report as JSON and return the file path."""
        out_dir = Path(directory)
        out_dir.mkdir(parents=True, exist_ok=True)
        output_file = out_dir / f"identity_report_{datetime.now(timezone.utc).strftime('%Y%m%d_%H%M%S')}.json"
        with open(output_file, 'w') as f:
            json.dump(report, f, indent=2)
        logger.info(f"Identity report exported to {output_file}")
        return output_file
