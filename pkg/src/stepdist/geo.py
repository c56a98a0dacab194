"""Great-circle distances between measuring stations.

Provides the contextual distance matrix G for cross-context consistency
analysis. Distances are haversine great circles on a sphere with the
IUGG mean Earth radius.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DuplicateStation, InvalidCoordinate
from .matrices import LabeledSquareMatrix, MatrixKind

EARTH_RADIUS_KM = 6371.0088


@dataclass(frozen=True)
class StationMetadata:
    """Station id plus position in decimal degrees."""

    id: str
    lat_deg: float
    lon_deg: float

    def __post_init__(self):
        if not (math.isfinite(self.lat_deg) and -90.0 <= self.lat_deg <= 90.0):
            raise InvalidCoordinate(f"station {self.id!r}: latitude {self.lat_deg} out of [-90, 90]")
        if not (math.isfinite(self.lon_deg) and -180.0 < self.lon_deg <= 180.0):
            raise InvalidCoordinate(f"station {self.id!r}: longitude {self.lon_deg} out of (-180, 180]")


def haversine_km(a: StationMetadata, b: StationMetadata) -> float:
    """Great-circle distance in km between two stations."""
    lat1, lon1, lat2, lon2 = map(math.radians, (a.lat_deg, a.lon_deg, b.lat_deg, b.lon_deg))
    sin_dlat = math.sin((lat2 - lat1) / 2.0)
    sin_dlon = math.sin((lon2 - lon1) / 2.0)
    under = sin_dlat * sin_dlat + math.cos(lat1) * math.cos(lat2) * sin_dlon * sin_dlon
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(under)))


def geo_distance_matrix(stations: list[StationMetadata]) -> LabeledSquareMatrix:
    """Pairwise haversine distances, labeled by station id."""
    ids = [s.id for s in stations]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise DuplicateStation(f"duplicate station ids: {dupes}")
    n = len(stations)
    if n < 2:
        raise ValueError(f"need at least 2 stations, got {n}")
    m = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = haversine_km(stations[i], stations[j])
            m[i, j] = d
            m[j, i] = d
    return LabeledSquareMatrix(tuple(ids), m, MatrixKind.DISTANCE)


def read_stations_csv(path) -> list[StationMetadata]:
    """Parse a station metadata CSV with header id,lat_deg,lon_deg."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["id", "lat_deg", "lon_deg"]:
        raise ValueError(f"{path}: expected header 'id,lat_deg,lon_deg'")
    out = []
    for row in rows[1:]:
        if not row:
            continue
        if len(row) != 3:
            raise ValueError(f"{path}: malformed station row {row}")
        out.append(StationMetadata(row[0].strip(), float(row[1]), float(row[2])))
    return out


def write_stations_csv(stations: list[StationMetadata], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "lat_deg", "lon_deg"])
        for s in stations:
            w.writerow([s.id, repr(s.lat_deg), repr(s.lon_deg)])
