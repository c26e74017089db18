"""
Rewriting of frontend gates into a hardware's native gate set.
"""
import math
from typing import List, Optional, Sequence, Tuple

import structlog

from muxbench.models.circuit import GATE_TABLE, Circuit, CircuitBuilder, GateClass
from muxbench.models.hardware import HardwareSpec
from muxbench.utils.error_handlers import UnsupportedGateError

logger = structlog.get_logger()

HALF_PI = math.pi / 2
MAX_EXPANSION_DEPTH = 8

# (name, qubits, params)
Op = Tuple[str, Tuple[int, ...], Tuple[float, ...]]


class NativeRebaser:
    """Expands gates recursively until only native, virtual and meta gates remain."""

    def __init__(self, spec: HardwareSpec):
        self.spec = spec

    def passes_through(self, name: str) -> bool:
        if self.spec.is_native(name):
            return True
        return GATE_TABLE[name][1] in (GateClass.META, GateClass.SWITCH_MARKER, GateClass.SWITCH_DELAY)

    def expand(self, op: Op, level: int = 0) -> List[Op]:
        name, qubits, params = op
        if self.passes_through(name):
            return [op]
        if level >= MAX_EXPANSION_DEPTH:
            raise UnsupportedGateError(name, self.spec.name)

        rewritten = self.rewrite(name, qubits, params)
        if rewritten is None:
            raise UnsupportedGateError(name, self.spec.name)

        out: List[Op] = []
        for sub in rewritten:
            out.extend(self.expand(sub, level + 1))
        return out

    def rewrite(self, name: str, qubits: Tuple[int, ...], params: Tuple[float, ...]) -> Optional[List[Op]]:
        """One rewriting step; None when no rule applies on this hardware."""
        native = self.spec.is_native
        if len(qubits) == 1:
            (q,) = qubits
            if name == "H":
                if native("SX"):
                    return [("RZ", (q,), (HALF_PI,)), ("SX", (q,), ()), ("RZ", (q,), (HALF_PI,))]
                if native("RY") and native("RX"):
                    return [("RY", (q,), (HALF_PI,)), ("RX", (q,), (math.pi,))]
            if name == "X":
                if native("RX"):
                    return [("RX", (q,), (math.pi,))]
                if native("SX"):
                    return [("SX", (q,), ()), ("SX", (q,), ())]
            if name == "SX" and native("RX"):
                return [("RX", (q,), (HALF_PI,))]
            if name == "RX" and native("SX"):
                (theta,) = params
                return [
                    ("RZ", (q,), (HALF_PI,)),
                    ("SX", (q,), ()),
                    ("RZ", (q,), (theta + math.pi,)),
                    ("SX", (q,), ()),
                    ("RZ", (q,), (HALF_PI,)),
                ]
            if name == "RY" and native("SX"):
                (theta,) = params
                return [
                    ("SX", (q,), ()),
                    ("RZ", (q,), (theta + math.pi,)),
                    ("SX", (q,), ()),
                    ("RZ", (q,), (math.pi,)),
                ]
            return None

        a, b = qubits
        if name == "CX":
            if native("CZ"):
                return [("H", (b,), ()), ("CZ", (a, b), ()), ("H", (b,), ())]
            if native("ECR"):
                return [
                    ("X", (a,), ()),
                    ("ECR", (a, b), ()),
                    ("RZ", (a,), (HALF_PI,)),
                    ("SX", (b,), ()),
                ]
        if name == "CZ" and (native("ECR") or native("CX")):
            return [("H", (b,), ()), ("CX", (a, b), ()), ("H", (b,), ())]
        if name == "SWAP":
            return [("CX", (a, b), ()), ("CX", (b, a), ()), ("CX", (a, b), ())]
        if name == "ECR" and native("CZ"):
            return [
                ("H", (b,), ()),
                ("CZ", (a, b), ()),
                ("RZ", (a,), (HALF_PI,)),
                ("RZ", (b,), (HALF_PI,)),
                ("H", (b,), ()),
                ("X", (a,), ()),
            ]
        return None


def native_ops(name: str, qubits: Sequence[int], spec: HardwareSpec, params: Sequence[float] = ()) -> List[Op]:
    """Native expansion of a single gate."""
    return NativeRebaser(spec).expand((name.upper(), tuple(qubits), tuple(params)))


def rebase_to_native(circuit: Circuit, spec: HardwareSpec) -> Circuit:
    """Rewrite every gate into the hardware's native set.

    Args:
        circuit: Frontend circuit
        spec: Target hardware

    Returns:
        Circuit with native gates only, ids renumbered and durations from the spec
    """
    rebaser = NativeRebaser(spec)
    builder = CircuitBuilder(circuit.n, spec=spec)
    for gate in circuit.gates:
        for name, qubits, params in rebaser.expand((gate.name, gate.qubits, gate.params)):
            builder.add(name, *qubits, params=params, tag=gate.tag)

    native = builder.build()
    logger.debug("Rebased circuit", hardware=spec.name, gates_in=len(circuit), gates_out=len(native))
    return native


def is_native_circuit(circuit: Circuit, spec: HardwareSpec) -> bool:
    rebaser = NativeRebaser(spec)
    return all(rebaser.passes_through(g.name) for g in circuit.gates)

