"""
OpenQASM 2 subset reader and writer.

The reader is a hand-written tokenizer plus recursive-descent parser covering
register declarations, the gates the IR knows, measure, barrier and the two
opaque switch gates ``sw`` and ``sdel``. Gate angles are decimals or pi
multiples such as ``pi``, ``-pi/4``, ``3*pi/4`` or ``pi*2``; any other
arithmetic is an unsupported construct.
"""
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import structlog

from muxbench.models.circuit import Circuit, CircuitBuilder, GateClass
from muxbench.models.hardware import HardwareSpec
from muxbench.utils.error_handlers import (
    ParseError,
    StorageError,
    UnsupportedConstructError,
    ValidationError,
)

logger = structlog.get_logger()

MUX_PRAGMA = "// pragma mux gates"

# qasm name -> (IR name, number of angle parameters, number of qubits)
QASM_GATES: Dict[str, Tuple[str, int, int]] = {
    "h": ("H", 0, 1),
    "x": ("X", 0, 1),
    "sx": ("SX", 0, 1),
    "rx": ("RX", 1, 1),
    "ry": ("RY", 1, 1),
    "rz": ("RZ", 1, 1),
    "cx": ("CX", 0, 2),
    "cz": ("CZ", 0, 2),
    "swap": ("SWAP", 0, 2),
    "iswap": ("ISWAP", 0, 2),
    "ecr": ("ECR", 0, 2),
}
MUX_OPAQUES = {"sw": ("SW", 2), "sdel": ("SDEL", 1)}

TOKEN_SPEC = [
    ("COMMENT", r"//[^\n]*"),
    ("NUMBER", r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"),
    ("STRING", r'"[^"\n]*"'),
    ("ARROW", r"->"),
    ("ID", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"[;,\[\]\(\)\+\-\*/\^]"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("MISMATCH", r"."),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """Split QASM text into tokens; the pragma comment survives as a token."""
    tokens: List[Token] = []
    line, line_start = 1, 0
    for match in TOKEN_RE.finditer(text):
        kind, value = match.lastgroup, match.group()
        column = match.start() - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
            continue
        if kind == "SKIP":
            continue
        if kind == "COMMENT":
            if value.strip() == MUX_PRAGMA:
                tokens.append(Token("PRAGMA", value.strip(), line, column))
            continue
        if kind == "MISMATCH":
            raise ParseError(f"Unexpected character {value!r}", line, column)
        tokens.append(Token(kind, value, line, column))
    tokens.append(Token("EOF", "", line, max(1, len(text) - line_start + 1)))
    return tokens


class QasmParser:
    """Recursive-descent parser producing a Circuit."""

    def __init__(self, text: str, spec: Optional[HardwareSpec] = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.spec = spec
        self.qregs: Dict[str, Tuple[int, int]] = {}
        self.cregs: Dict[str, int] = {}
        self.num_qubits = 0
        self.mux_enabled = False
        self.declared_opaques: set = set()
        self.ops: List[Tuple[str, Tuple[float, ...], Tuple[int, ...]]] = []

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.current
        if token.kind != kind or (value is not None and token.value != value):
            wanted = value or kind
            raise ParseError(f"Expected {wanted!r}, found {token.value or token.kind!r}", token.line, token.column)
        return self.advance()

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        token = self.current
        if token.kind == kind and (value is None or token.value == value):
            return self.advance()
        return None

    # grammar

    def parse(self) -> Circuit:
        self.header()
        while self.current.kind != "EOF":
            self.statement()

        builder = CircuitBuilder(self.num_qubits, spec=self.spec)
        for name, params, qubits in self.ops:
            builder.add(name, *qubits, params=params)
        circuit = builder.build()
        logger.debug("Parsed QASM", qubits=circuit.n, gates=len(circuit))
        return circuit

    def header(self) -> None:
        if self.accept("PRAGMA"):
            self.mux_enabled = True
        if self.current.kind == "ID" and self.current.value == "OPENQASM":
            self.advance()
            version = self.expect("NUMBER")
            if not version.value.startswith("2"):
                raise UnsupportedConstructError(f"OPENQASM {version.value}", version.line)
            self.expect("OP", ";")

    def statement(self) -> None:
        token = self.current
        if token.kind == "PRAGMA":
            self.advance()
            self.mux_enabled = True
            return
        if token.kind != "ID":
            raise ParseError(f"Unexpected token {token.value!r}", token.line, token.column)

        word = token.value
        if word == "include":
            self.include()
        elif word == "qreg":
            self.register(quantum=True)
        elif word == "creg":
            self.register(quantum=False)
        elif word == "opaque":
            self.opaque()
        elif word == "measure":
            self.measure()
        elif word == "barrier":
            self.barrier()
        elif word in QASM_GATES:
            self.gate_application()
        elif word in MUX_OPAQUES:
            if word not in self.declared_opaques:
                raise UnsupportedConstructError(word, token.line)
            self.gate_application()
        else:
            raise UnsupportedConstructError(word, token.line)

    def include(self) -> None:
        keyword = self.advance()
        path = self.expect("STRING")
        if path.value.strip('"') != "qelib1.inc":
            raise UnsupportedConstructError(f"include {path.value}", keyword.line)
        self.expect("OP", ";")

    def register(self, quantum: bool) -> None:
        self.advance()
        name = self.expect("ID")
        self.expect("OP", "[")
        size_token = self.expect("NUMBER")
        size = self.integer(size_token)
        self.expect("OP", "]")
        self.expect("OP", ";")
        if name.value in self.qregs or name.value in self.cregs:
            raise ParseError(f"Register {name.value!r} declared twice", name.line, name.column)
        if quantum:
            self.qregs[name.value] = (self.num_qubits, size)
            self.num_qubits += size
        else:
            self.cregs[name.value] = size

    def opaque(self) -> None:
        keyword = self.advance()
        name = self.expect("ID")
        if name.value not in MUX_OPAQUES or not self.mux_enabled:
            raise UnsupportedConstructError(f"opaque {name.value}", keyword.line)
        arity = MUX_OPAQUES[name.value][1]
        args = [self.expect("ID")]
        while self.accept("OP", ","):
            args.append(self.expect("ID"))
        if len(args) != arity:
            raise ParseError(f"opaque {name.value} takes {arity} argument(s)", name.line, name.column)
        self.expect("OP", ";")
        self.declared_opaques.add(name.value)

    def measure(self) -> None:
        self.advance()
        qubits = self.argument()
        self.expect("ARROW")
        self.classical_argument()
        self.expect("OP", ";")
        for q in qubits:
            self.ops.append(("MEASURE", (), (q,)))

    def barrier(self) -> None:
        self.advance()
        qubits = list(self.argument())
        while self.accept("OP", ","):
            qubits.extend(self.argument())
        self.expect("OP", ";")
        self.ops.append(("BARRIER", (), tuple(dict.fromkeys(qubits))))

    def gate_application(self) -> None:
        name_token = self.advance()
        if name_token.value in QASM_GATES:
            ir_name, num_params, arity = QASM_GATES[name_token.value]
        else:
            ir_name, arity = MUX_OPAQUES[name_token.value]
            num_params = 0

        params: List[float] = []
        if self.accept("OP", "("):
            params.append(self.angle())
            while self.accept("OP", ","):
                params.append(self.angle())
            self.expect("OP", ")")
        if len(params) != num_params:
            raise ParseError(
                f"Gate {name_token.value} takes {num_params} parameter(s), got {len(params)}",
                name_token.line,
                name_token.column,
            )

        args = [self.argument()]
        while self.accept("OP", ","):
            args.append(self.argument())
        self.expect("OP", ";")
        if len(args) != arity:
            raise ParseError(
                f"Gate {name_token.value} takes {arity} qubit argument(s), got {len(args)}",
                name_token.line,
                name_token.column,
            )

        # register broadcast
        sizes = {len(a) for a in args if len(a) > 1}
        if len(sizes) > 1:
            raise ValidationError(f"Mismatched register sizes in {name_token.value} on line {name_token.line}")
        width = sizes.pop() if sizes else 1
        for i in range(width):
            qubits = tuple(a[i] if len(a) > 1 else a[0] for a in args)
            if len(set(qubits)) != len(qubits):
                raise ValidationError(f"Gate {name_token.value} on line {name_token.line} repeats a qubit")
            self.ops.append((ir_name, tuple(params), qubits))

    def argument(self) -> Tuple[int, ...]:
        name = self.expect("ID")
        if name.value not in self.qregs:
            if name.value in self.cregs:
                raise ParseError(f"{name.value!r} is a classical register", name.line, name.column)
            raise ParseError(f"Unknown quantum register {name.value!r}", name.line, name.column)
        offset, size = self.qregs[name.value]
        if self.accept("OP", "["):
            index = self.integer(self.expect("NUMBER"))
            self.expect("OP", "]")
            if index >= size:
                raise ValidationError(
                    f"Qubit {name.value}[{index}] out of range (size {size}) on line {name.line}",
                    field="qubits",
                )
            return (offset + index,)
        return tuple(range(offset, offset + size))

    def classical_argument(self) -> None:
        name = self.expect("ID")
        if name.value not in self.cregs:
            raise ParseError(f"Unknown classical register {name.value!r}", name.line, name.column)
        if self.accept("OP", "["):
            index = self.integer(self.expect("NUMBER"))
            self.expect("OP", "]")
            if index >= self.cregs[name.value]:
                raise ValidationError(f"Bit {name.value}[{index}] out of range on line {name.line}")

    def integer(self, token: Token) -> int:
        if not token.value.isdigit():
            raise ParseError(f"Expected an integer, found {token.value!r}", token.line, token.column)
        return int(token.value)

    # angle := ('-'|'+') angle | '(' angle ')' | NUMBER ['*' pi ['/' NUMBER]] | pi ['*' NUMBER] ['/' NUMBER]

    def angle(self) -> float:
        value = self.signed_angle()
        token = self.current
        if token.kind == "OP" and token.value in "+-*/^":
            raise UnsupportedConstructError(token.value, token.line)
        return value

    def signed_angle(self) -> float:
        if self.accept("OP", "-"):
            return -self.signed_angle()
        if self.accept("OP", "+"):
            return self.signed_angle()
        if self.accept("OP", "("):
            value = self.angle()
            self.expect("OP", ")")
            return value
        if self.current.kind == "NUMBER":
            value = float(self.advance().value)
            star = self.accept("OP", "*")
            if star is None:
                return value
            if not (self.current.kind == "ID" and self.current.value == "pi"):
                raise UnsupportedConstructError(star.value, star.line)
            self.pi()
            return value * math.pi / self.divisor()
        self.pi()
        factor = self.operand() if self.accept("OP", "*") else 1.0
        return factor * math.pi / self.divisor()

    def pi(self) -> None:
        token = self.current
        if token.kind == "ID" and token.value == "pi":
            self.advance()
        elif token.kind == "ID":
            raise UnsupportedConstructError(token.value, token.line)
        else:
            raise ParseError(f"Expected an angle, found {token.value or token.kind!r}", token.line, token.column)

    def divisor(self) -> float:
        if not self.accept("OP", "/"):
            return 1.0
        token = self.current
        value = self.operand()
        if value == 0:
            raise ParseError("Division by zero in angle", token.line, token.column)
        return value

    def operand(self) -> float:
        token = self.current
        if token.kind != "NUMBER":
            raise UnsupportedConstructError(token.value or token.kind, token.line)
        self.advance()
        return float(token.value)


def parse_qasm(text: str, spec: Optional[HardwareSpec] = None) -> Circuit:
    """Parse OpenQASM 2 text into a circuit.

    Args:
        text: Program text
        spec: Optional hardware spec used to time gates

    Returns:
        Circuit over the flattened quantum registers
    """
    return QasmParser(text, spec).parse()


def load_qasm(path: Union[str, Path], spec: Optional[HardwareSpec] = None) -> Circuit:
    """Read and parse a QASM file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StorageError(f"Cannot read circuit: {e}", path=str(path))
    return parse_qasm(text, spec)


def _format_angle(value: float) -> str:
    return repr(float(value))


def emit_qasm(circuit: Circuit) -> str:
    """Serialise a circuit as OpenQASM 2 text over a single register ``q``."""
    uses_mux = any(g.kind.is_mux for g in circuit.gates)
    measured = any(g.name == "MEASURE" for g in circuit.gates)

    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    if uses_mux:
        lines += [MUX_PRAGMA, "opaque sw a,b;", "opaque sdel a;"]
    lines.append(f"qreg q[{circuit.n}];")
    if measured:
        lines.append(f"creg c[{circuit.n}];")

    for gate in circuit.gates:
        args = ",".join(f"q[{q}]" for q in gate.qubits)
        if gate.name == "MEASURE":
            q = gate.qubits[0]
            lines.append(f"measure q[{q}] -> c[{q}];")
        elif gate.gate_class is GateClass.META:
            lines.append(f"barrier {args};")
        elif gate.params:
            params = ",".join(_format_angle(p) for p in gate.params)
            lines.append(f"{gate.name.lower()}({params}) {args};")
        else:
            lines.append(f"{gate.name.lower()} {args};")

    return "\n".join(lines) + "\n"
