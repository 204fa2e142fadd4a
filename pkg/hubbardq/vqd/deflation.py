"""
Variational quantum deflation

State k minimizes

    F(theta_k) = <H> + mu <S^2> + sum_{i<k} beta_i |<psi(theta_k)|psi_i>|^2

with overlaps taken exactly from statevectors. F is the expectation of the
Hermitian operator H + mu S^2 + sum_i beta_i |psi_i><psi_i|, so its gradient
comes from one backward sweep over the gates (L-BFGS-B); Nelder-Mead and
Powell use values only.

Restart 0 starts from a small draw around zero with ``seed`` (zero itself is
a stationary point: every first-order move from the HF string is a single
excitation or a spin flip), restart r > 0 from a uniform draw with seed + r.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.optimize
import scipy.sparse

from hubbardq.exceptions import ValidationError
from hubbardq.observability import TraceWriter, mainLogger
from hubbardq.qubit.jordan_wigner import s_squared_operator
from hubbardq.qubit.pauli import PauliSum
from hubbardq.qubit.resources import l1_norm
from hubbardq.vqd.ansatz import AnsatzCircuit, a_gate, a_gate_derivatives, build_ansatz
from hubbardq.vqd.statevector import apply_circuit, apply_two_qubit, basis_state

SUPPORTED_METHODS = ("L-BFGS-B", "Nelder-Mead", "Powell")
GRADIENT_METHODS = ("L-BFGS-B",)
START_SPREAD = 0.1  # rad, restart 0


@dataclass(frozen=True)
class VQDOptions:
    """
    Attributes:
        layers: Brick-wall layers (``default_layers`` when None)
        betas: Overlap penalties per prior state (lambda in eV when None)
        seed: Base seed of the restart draws
        restarts: Optimizations per state, best kept
        tol: Optimizer tolerance (eV, per parameter for the gradient)
        max_evaluations: Cost evaluations per optimization
        spin_penalty: Weight mu of <S^2> (0 disables it)
        overlap_tol: Largest accepted |overlap|^2 with prior states
        method: scipy.optimize.minimize method
    """
    layers: Optional[int] = None
    betas: Optional[Tuple[float, ...]] = None
    seed: int = 42
    restarts: int = 5
    tol: float = 1e-6
    max_evaluations: int = 5000
    spin_penalty: float = 10.0
    overlap_tol: float = 1e-4
    method: str = "L-BFGS-B"

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError("restarts must be at least 1")
        if self.max_evaluations < 1:
            raise ValidationError("max_evaluations must be at least 1")
        if self.method not in SUPPORTED_METHODS:
            raise ValidationError(f"method must be one of {', '.join(SUPPORTED_METHODS)}")
        if self.betas is not None:
            object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))


@dataclass(frozen=True)
class VQDState:
    index: int
    parameters: np.ndarray
    energy: float
    cost: float
    s_squared: float
    overlaps: Tuple[float, ...]
    cost_history: Tuple[float, ...]
    evaluations: int
    restart: int
    converged: bool
    message: str = ""


@dataclass(frozen=True)
class VQDResult:
    circuit: AnsatzCircuit
    betas: Tuple[float, ...]
    options: VQDOptions
    states: Tuple[VQDState, ...] = field(default=())

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.states])

    @property
    def converged(self) -> bool:
        return all(s.converged for s in self.states)

    def statevector(self, k: int) -> np.ndarray:
        return apply_circuit(self.circuit, self.states[k].parameters)


class _DeflatedOperator:
    """H + penalty + sum_i beta_i |p_i><p_i| acting on statevectors"""

    def __init__(self, psum: PauliSum, prior: Sequence[np.ndarray], betas: Sequence[float],
                 penalty: Optional[scipy.sparse.spmatrix]):
        if len(betas) < len(prior):
            raise ValidationError(
                f"{len(prior)} prior states need as many betas, got {len(betas)}"
            )
        self.matrix = psum.sparse if penalty is None else psum.sparse + penalty
        self.projectors = list(zip(betas, prior))

    def __matmul__(self, sv: np.ndarray) -> np.ndarray:
        out = self.matrix @ sv
        for beta, state in self.projectors:
            out = out + beta * np.vdot(state, sv) * state
        return out


def vqd_cost(
    params_k: Sequence[float],
    circuit: AnsatzCircuit,
    psum: PauliSum,
    prior: Sequence[np.ndarray] = (),
    betas: Sequence[float] = (),
    penalty: Optional[scipy.sparse.spmatrix] = None,
) -> float:
    """
    Deflation cost of one parameter vector

    Args:
        params_k: Circuit parameters
        circuit: Ansatz
        psum: Hamiltonian
        prior: Statevectors of the states already found
        betas: One penalty per prior state
        penalty: Extra operator added to H (e.g. mu S^2), sparse

    Raises:
        ValidationError: Fewer betas than prior states
    """
    operator = _DeflatedOperator(psum, prior, betas, penalty)
    sv = apply_circuit(circuit, params_k)
    return float(np.real(np.vdot(sv, operator @ sv)))


def _cost_and_gradient(params: np.ndarray, circuit: AnsatzCircuit,
                       operator: _DeflatedOperator) -> Tuple[float, np.ndarray]:
    n = circuit.n_qubits
    gates = [a_gate(params[2 * g], params[2 * g + 1]) for g in range(len(circuit.gates))]
    psi = basis_state(n, circuit.initial)
    for gate, (q, _) in zip(gates, circuit.gates):
        psi = apply_two_qubit(psi, gate, q, n)
    lam = operator @ psi
    cost = float(np.real(np.vdot(psi, lam)))

    grad = np.zeros(circuit.n_params)
    for g in range(len(gates) - 1, -1, -1):
        q = circuit.gates[g][0]
        adjoint = gates[g].conj().T
        psi = apply_two_qubit(psi, adjoint, q, n)
        d_theta, d_phi = a_gate_derivatives(params[2 * g], params[2 * g + 1])
        grad[2 * g] = 2.0 * np.real(np.vdot(lam, apply_two_qubit(psi, d_theta, q, n)))
        grad[2 * g + 1] = 2.0 * np.real(np.vdot(lam, apply_two_qubit(psi, d_phi, q, n)))
        lam = apply_two_qubit(lam, adjoint, q, n)
    return cost, grad


def vqd_gradient(
    params_k: Sequence[float],
    circuit: AnsatzCircuit,
    psum: PauliSum,
    prior: Sequence[np.ndarray] = (),
    betas: Sequence[float] = (),
    penalty: Optional[scipy.sparse.spmatrix] = None,
) -> np.ndarray:
    """Gradient of ``vqd_cost`` with respect to the circuit parameters"""
    params = np.asarray(params_k, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValidationError(f"circuit takes {circuit.n_params} parameters, got {params.size}")
    operator = _DeflatedOperator(psum, prior, betas, penalty)
    return _cost_and_gradient(params, circuit, operator)[1]


def _minimize(circuit: AnsatzCircuit, operator: _DeflatedOperator, x0: np.ndarray,
              options: VQDOptions, history: List[float], on_step):
    def callback(intermediate_result):
        history.append(float(intermediate_result.fun))
        on_step(len(history), float(intermediate_result.fun))

    if options.method in GRADIENT_METHODS:
        opts = {"maxfun": options.max_evaluations, "maxiter": options.max_evaluations,
                "ftol": 1e-12, "gtol": options.tol}
        return scipy.optimize.minimize(
            _cost_and_gradient, x0, args=(circuit, operator), jac=True,
            method=options.method, callback=callback, options=opts,
        )

    def fun(x):
        sv = apply_circuit(circuit, x)
        return float(np.real(np.vdot(sv, operator @ sv)))

    if options.method == "Nelder-Mead":
        opts = {"maxfev": options.max_evaluations, "xatol": options.tol, "fatol": options.tol,
                "adaptive": True}
    else:
        opts = {"maxfev": options.max_evaluations, "xtol": options.tol, "ftol": options.tol}
    return scipy.optimize.minimize(fun, x0, method=options.method, callback=callback, options=opts)


def _start(circuit: AnsatzCircuit, seed: int, restart: int) -> np.ndarray:
    if restart == 0:
        return np.random.default_rng(seed).normal(0.0, START_SPREAD, circuit.n_params)
    return np.random.default_rng(seed + restart).uniform(-np.pi, np.pi, circuit.n_params)


def optimize_vqd(
    psum: PauliSum,
    n_states: int,
    n_electrons: int,
    options: Optional[VQDOptions] = None,
    trace: Optional[TraceWriter] = None,
) -> VQDResult:
    """
    Sequentially optimize the n_states lowest states

    Args:
        psum: Hamiltonian on 2K qubits (eV)
        n_states: Number of states
        n_electrons: Electrons in the HF reference string
        options: Optimizer settings
        trace: Optional JSONL writer for per-iteration cost values

    Returns:
        VQDResult; states that miss the optimizer or overlap criteria, or whose
        optimizer never took a step, carry converged=False with the best value
        found
    """
    options = options or VQDOptions()
    if n_states < 1:
        raise ValidationError(f"n_states must be at least 1, got {n_states}")
    if psum.n_qubits % 2:
        raise ValidationError("the Hamiltonian must act on an even number of qubits")

    circuit = build_ansatz(psum.n_qubits // 2, n_electrons, options.layers)
    if options.betas is None:
        betas = (l1_norm(psum, unit="eV"),) * max(n_states - 1, 0)
    else:
        betas = options.betas
        if len(betas) < n_states - 1:
            raise ValidationError(f"{n_states} states need {n_states - 1} betas, got {len(betas)}")

    s2 = s_squared_operator(psum.n_qubits).sparse
    penalty = options.spin_penalty * s2 if options.spin_penalty else None

    mainLogger.info(
        "VQD started",
        n_qubits=psum.n_qubits,
        n_states=n_states,
        n_params=circuit.n_params,
        layers=circuit.layers,
        method=options.method,
        restarts=options.restarts,
        betas=list(betas),
    )

    found: List[VQDState] = []
    prior: List[np.ndarray] = []
    for k in range(n_states):
        operator = _DeflatedOperator(psum, prior, betas[:k], penalty)
        best = None
        for restart in range(options.restarts):
            history: List[float] = []

            def on_step(iteration, value, k=k, restart=restart):
                if trace is not None:
                    trace.write({"state": k, "restart": restart, "iteration": iteration, "cost": value})

            result = _minimize(circuit, operator, _start(circuit, options.seed, restart),
                               options, history, on_step)
            mainLogger.debug("VQD restart finished", state=k, restart=restart,
                             cost=float(result.fun), evaluations=int(result.nfev),
                             iterations=len(history), success=bool(result.success))
            if best is None or result.fun < best[0].fun:
                best = (result, restart, tuple(history))

        result, restart, history = best
        sv = apply_circuit(circuit, result.x)
        energy = psum.expectation(sv)
        s_sq = float(np.real(np.vdot(sv, s2 @ sv)))
        overlaps = tuple(float(abs(np.vdot(p, sv)) ** 2) for p in prior)
        orthogonal = all(o < options.overlap_tol for o in overlaps)
        state = VQDState(
            index=k,
            parameters=np.array(result.x),
            energy=energy,
            cost=float(result.fun),
            s_squared=s_sq,
            overlaps=overlaps,
            cost_history=history,
            evaluations=int(result.nfev),
            restart=restart,
            converged=bool(result.success) and orthogonal and len(history) > 0,
            message=str(result.message),
        )
        if not state.converged:
            mainLogger.warning("VQD state not converged", state=k, best_cost=state.cost,
                               overlaps=list(overlaps), iterations=len(history),
                               message=state.message)
        mainLogger.info("VQD state found", state=k, energy=energy, s_squared=s_sq,
                        restart=restart, evaluations=state.evaluations)
        found.append(state)
        prior.append(sv)

    return VQDResult(circuit=circuit, betas=tuple(betas), options=options, states=tuple(found))
