from opMatrix.counts import ExtendedCount, FredholmData, SpaceModel, INF
from opMatrix.regions import (
    Point, Circle, OpenDisk, ClosedDisk, FullPlane, Empty, combine, contains,
    is_empty, is_equal, describe,
)
