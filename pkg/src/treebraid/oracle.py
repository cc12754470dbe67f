"""Brute-force product evaluation on the cubical model.

The degree-one classes are pulled back to cochains on UD_nT along upper
gradient paths, multiplied with the cubical cup product and pushed back to the
critical basis along lower gradient paths.  No closed formula is involved.
"""

from __future__ import annotations

from typing import Sequence

from .cubes import Cochain, orbit_cup
from .interaction import InteractionVertex
from .morse import MorseModel, enumerate_critical
from .ring import ChangedGenerator, RingElement, basis_of, product_cocycle_blocks


class Oracle:
    def __init__(self, model: MorseModel):
        self.model = model
        self._bar: dict = {}
        self._crit: dict = {}

    @classmethod
    def build(cls, tree, n, budget=None) -> Oracle:
        return cls(MorseModel(tree, n, budget))

    def criticals(self, m: int):
        if m not in self._crit:
            self._crit[m] = enumerate_critical(self.model.tree, self.model.n, m)
        return self._crit[m]

    def representative(self, g: ChangedGenerator | InteractionVertex) -> Cochain:
        g = g if isinstance(g, ChangedGenerator) else ChangedGenerator(g)
        out: Cochain = {}
        for c, v in g.expansion():
            cell = basis_of(v)
            if cell not in self._bar:
                self._bar[cell] = self.model.phi_bar(cell)
            for cube, val in self._bar[cell].items():
                out[cube] = out.get(cube, 0) + c * val
        return {k: v for k, v in out.items() if v}

    def push(self, cochain: Cochain, m: int) -> RingElement:
        return RingElement(self.model.phi_under(cochain, m, self.criticals(m)))

    def product(self, generators: Sequence[ChangedGenerator | InteractionVertex]) -> RingElement:
        if not generators:
            return self.push({tuple((v, v) for v in range(self.model.n)): 1}, 0)
        z = self.representative(generators[-1])
        for g in reversed(generators[:-1]):
            z = orbit_cup(self.model.tree, self.representative(g), z)
            if not z:
                return RingElement()
        return self.push(z, len(generators))

    def blocks_product(self, family: Sequence[InteractionVertex]) -> RingElement:
        z = product_cocycle_blocks(self.model.tree, self.model.n, family)
        return self.push(z, len(family)) if z else RingElement()
