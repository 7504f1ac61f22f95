import csv
from pathlib import Path
from typing import Iterable, Optional, Sequence

FD_HEADER = ("model", "p_d", "p_d1", "p_d2", "phi_imp", "seed", "density_vehkm", "flow_vehh", "speed_kmh")
SPACETIME_HEADER = ("t", "veh", "x", "v", "s", "i")
WAVE_HEADER = ("model", "p_d_variant", "seed", "speed_kmh", "residual_cells", "points")


def decimal(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.4f}"


def probability(value: float) -> str:
    return format(value, "g")


def write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path
