"""Known three-factor orbit 2-designs with small block size, with their λ values."""

from __future__ import annotations

from dataclasses import dataclass

from .grid import Block, parse_digits


@dataclass(frozen=True)
class CatalogRow:
    row: int
    shape: tuple[int, ...]
    k: int
    lam: int
    words: tuple[str, ...]

    def block(self) -> Block:
        return parse_digits(self.shape, self.words)


CATALOG = [
    CatalogRow(1, (2, 2, 4), 6, 2, ("000", "113", "111", "010", "100", "112")),
    CatalogRow(2, (2, 2, 4), 6, 6, ("000", "002", "103", "001", "012", "112")),
    CatalogRow(3, (2, 2, 4), 6, 12, ("002", "113", "101", "001", "012", "003")),
    CatalogRow(4, (2, 2, 4), 6, 12, ("013", "101", "102", "001", "012", "003")),
    CatalogRow(5, (4, 4, 4), 7, 144, ("000", "100", "312", "130", "013", "333", "102")),
    CatalogRow(6, (4, 4, 4), 7, 144, ("000", "100", "012", "122", "311", "301", "121")),
    CatalogRow(7, (4, 4, 4), 7, 144, ("000", "100", "122", "321", "312", "011", "102")),
    CatalogRow(8, (4, 4, 4), 7, 144, ("000", "100", "131", "312", "011", "332", "102")),
    CatalogRow(9, (2, 4, 7), 11, 4320,
               ("000", "001", "002", "003", "010", "020", "034", "100", "111", "125", "136")),
    CatalogRow(10, (3, 3, 5), 12, 288,
               ("000", "011", "012", "013", "020", "101", "102", "103", "111", "122", "200", "213")),
]

# smallest admissible (shape, k) per shape for s = 3, k <= 12, as listed with the catalog
LISTED_PARAMETERS = {((2, 2, 4), 6), ((4, 4, 4), 7), ((2, 4, 7), 11), ((3, 3, 5), 12)}
