"""
Hardware presets and hardware spec file I/O.
"""
import json
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

import structlog
from pydantic import ValidationError as PydanticValidationError

from muxbench.config import settings
from muxbench.models.hardware import CouplingMap, HardwareSpec, HardwareSpecDocument
from muxbench.utils.error_handlers import StorageError, ValidationError

logger = structlog.get_logger()

# IBM Eagle r3 heavy-hexagon connectivity: seven qubit rows joined by bridge qubits.
HEAVY_HEX_127_EDGES: Tuple[Tuple[int, int], ...] = (
    # row 0: 0-13
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
    (10, 11), (11, 12), (12, 13),
    # bridges 14-17
    (0, 14), (14, 18), (4, 15), (15, 22), (8, 16), (16, 26), (12, 17), (17, 30),
    # row 1: 18-32
    (18, 19), (19, 20), (20, 21), (21, 22), (22, 23), (23, 24), (24, 25), (25, 26),
    (26, 27), (27, 28), (28, 29), (29, 30), (30, 31), (31, 32),
    # bridges 33-36
    (20, 33), (33, 39), (24, 34), (34, 43), (28, 35), (35, 47), (32, 36), (36, 51),
    # row 2: 37-51
    (37, 38), (38, 39), (39, 40), (40, 41), (41, 42), (42, 43), (43, 44), (44, 45),
    (45, 46), (46, 47), (47, 48), (48, 49), (49, 50), (50, 51),
    # bridges 52-55
    (37, 52), (52, 56), (41, 53), (53, 60), (45, 54), (54, 64), (49, 55), (55, 68),
    # row 3: 56-70
    (56, 57), (57, 58), (58, 59), (59, 60), (60, 61), (61, 62), (62, 63), (63, 64),
    (64, 65), (65, 66), (66, 67), (67, 68), (68, 69), (69, 70),
    # bridges 71-74
    (58, 71), (71, 77), (62, 72), (72, 81), (66, 73), (73, 85), (70, 74), (74, 89),
    # row 4: 75-89
    (75, 76), (76, 77), (77, 78), (78, 79), (79, 80), (80, 81), (81, 82), (82, 83),
    (83, 84), (84, 85), (85, 86), (86, 87), (87, 88), (88, 89),
    # bridges 90-93
    (75, 90), (90, 94), (79, 91), (91, 98), (83, 92), (92, 102), (87, 93), (93, 106),
    # row 5: 94-108
    (94, 95), (95, 96), (96, 97), (97, 98), (98, 99), (99, 100), (100, 101), (101, 102),
    (102, 103), (103, 104), (104, 105), (105, 106), (106, 107), (107, 108),
    # bridges 109-112
    (96, 109), (109, 114), (100, 110), (110, 118), (104, 111), (111, 122), (108, 112), (112, 126),
    # row 6: 113-126
    (113, 114), (114, 115), (115, 116), (116, 117), (117, 118), (118, 119), (119, 120),
    (120, 121), (121, 122), (122, 123), (123, 124), (124, 125), (125, 126),
)


def square_grid(rows: int, cols: int) -> CouplingMap:
    """Nearest-neighbour grid; qubit (r, c) has index r * cols + c."""
    if rows < 1 or cols < 1:
        raise ValidationError("Grid dimensions must be positive", field="rows")

    edges = set()
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.add((q, q + 1))
            if r + 1 < rows:
                edges.add((q, q + cols))
    coords = tuple((r, c) for r in range(rows) for c in range(cols))
    return CouplingMap(rows * cols, frozenset(edges), name=f"grid{rows}x{cols}", coords=coords)


def heavy_hexagon_127() -> CouplingMap:
    """127-qubit heavy-hexagon lattice."""
    return CouplingMap(127, frozenset(HEAVY_HEX_127_EDGES), name="heavy_hex_127")


def grid_spec(coupling: CouplingMap, t_sw_ns: Optional[int] = None) -> HardwareSpec:
    """Grid-style device: CZ/ISWAP at 200 ns, RX/RY/H at 20 ns, virtual RZ."""
    return HardwareSpec(
        name=coupling.name,
        coupling=coupling,
        native_1q={"RX": 20, "RY": 20, "H": 20},
        native_2q={"CZ": 200, "ISWAP": 200},
        virtual=frozenset({"RZ"}),
        t_sw_ns=settings.T_SW_NS if t_sw_ns is None else t_sw_ns,
    )


def eagle_spec(coupling: Optional[CouplingMap] = None, t_sw_ns: Optional[int] = None) -> HardwareSpec:
    """Eagle-style device: SX/X at 60 ns, ECR at 660 ns, virtual RZ."""
    coupling = coupling or heavy_hexagon_127()
    return HardwareSpec(
        name="eagle",
        coupling=coupling,
        native_1q={"SX": 60, "X": 60},
        native_2q={"ECR": 660},
        virtual=frozenset({"RZ"}),
        t_sw_ns=settings.T_SW_NS if t_sw_ns is None else t_sw_ns,
    )


PRESETS: Dict[str, Callable[[], HardwareSpec]] = {
    "grid5": lambda: grid_spec(square_grid(5, 5)),
    "grid11": lambda: grid_spec(square_grid(11, 11)),
    "eagle": lambda: eagle_spec(),
}


def load_hardware_spec(path: Union[str, Path]) -> HardwareSpec:
    """Read a hardware spec JSON file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise StorageError(f"Cannot read hardware spec: {e}", path=str(path))
    except json.JSONDecodeError as e:
        raise ValidationError(f"Hardware spec {path} is not valid JSON: {e}", field="spec")

    try:
        document = HardwareSpecDocument.model_validate(raw)
    except PydanticValidationError as e:
        raise ValidationError(f"Hardware spec {path} failed validation: {e}", field="spec")

    spec = document.to_spec()
    logger.info("Loaded hardware spec", path=str(path), name=spec.name, qubits=spec.n)
    return spec


def save_hardware_spec(spec: HardwareSpec, path: Union[str, Path]) -> Path:
    """Write a hardware spec as JSON."""
    path = Path(path)
    document = HardwareSpecDocument.from_spec(spec)
    try:
        path.write_text(json.dumps(document.model_dump(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as e:
        raise StorageError(f"Cannot write hardware spec: {e}", path=str(path))
    return path


def resolve_spec(name_or_path: str, t_sw_ns: Optional[int] = None) -> HardwareSpec:
    """Map a preset name or a JSON path to a hardware spec, optionally overriding t_sw."""
    if name_or_path in PRESETS:
        spec = PRESETS[name_or_path]()
    elif name_or_path.endswith(".json"):
        spec = load_hardware_spec(name_or_path)
    else:
        raise ValidationError(
            f"Unknown hardware '{name_or_path}'; use one of {preset_names()} or a .json file",
            field="spec",
        )
    if t_sw_ns is not None:
        spec = spec.with_t_sw(t_sw_ns)
    return spec


def preset_names() -> List[str]:
    return sorted(PRESETS)
