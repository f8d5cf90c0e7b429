"""Shared fixtures: published reference tables and cached heavy artifacts."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hexlat.modular import reconstruct_partition
from hexlat.roots import classify_zeros, find_zeros

# Published endpoint values for L x L cylindrical lattices (zeros of the
# exact polynomials; the regression targets for criterion 2).
ZD_TABLE = {
    9: -0.0957417573, 12: -0.0932266680, 15: -0.0920714392,
    18: -0.0914523473, 21: -0.0910853230, 24: -0.0908515103,
    27: -0.0906942824, 30: -0.0905839894, 33: -0.0905039451,
    36: -0.0904442058, 39: -0.0903985638,
}
ZC_TABLE = {
    9: 5.9002937473 + 12.2312152474j, 12: 9.2335210855 + 9.3476347389j,
    15: 10.5114514245 + 7.2812520022j, 18: 11.0571925423 + 5.8559364459j,
    21: 11.3084528958 + 4.8492670401j, 24: 11.4268383658 + 4.1113758041j,
    27: 11.4806273673 + 3.5521968857j, 30: 11.5012919280 + 3.1162734906j,
    33: 11.5044258314 + 2.7682753249j, 36: 11.4981796564 + 2.4848695493j,
    39: 11.4869896404 + 2.2501329582j,
}

# Equimodular-curve landmarks in the translation/reflection-reduced sector.
EQUIMODULAR_ENDPOINTS = {
    12: {"zd": -0.09051765, "ratio_zd": 0.45085,
         "zc": 9.7432 + 5.0712j, "ratio_zc": 0.55487},
    15: {"zd": -0.09037303, "ratio_zd": 0.53048,
         "zc": 10.2971 + 3.9465j, "ratio_zc": 0.54278},
    18: {"zd": -0.09030007, "ratio_zd": 0.59046,
         "zc": 10.5753 + 3.2016j, "ratio_zc": 0.58463},
    21: {"zd": -0.09026034, "ratio_zd": 0.63709,
         "zc": 10.7340 + 2.6730j, "ratio_zc": 0.62006},
}

NECKLACE_LANDMARKS = {
    18: {"y": -3.8370, "leftmost": -7.1499, "end": -6.3703 + 4.0485j},
    21: {"y": -3.7731, "leftmost": -7.9020, "end": -5.5898 + 5.8764j},
    24: {"y": -4.0637, "leftmost": -7.8663, "end": -4.8079 + 7.0090j},
}

DIHEDRAL_CLASS_TABLE = {3: 2, 6: 5, 9: 9, 12: 26, 15: 64, 18: 209,
                        21: 657, 24: 2359, 27: 8442, 30: 31836}
LUCAS_TABLE = {3: 4, 6: 18, 9: 76, 12: 322, 15: 1364, 18: 5778,
               21: 24476, 24: 103682, 27: 439204, 30: 1860498}


class _Store:
    """Session-wide cache of expensive polynomials and zero sets."""

    def __init__(self):
        self._polys = {}
        self._zeros = {}

    def polynomial(self, lh, lv, boundary="cylindrical"):
        key = (lh, lv, boundary)
        if key not in self._polys:
            rep = reconstruct_partition(lh, lv, boundary, threads=2)
            self._polys[key] = rep
        return self._polys[key]

    def zeros(self, lh, lv, boundary="cylindrical"):
        key = (lh, lv, boundary)
        if key not in self._zeros:
            poly = self.polynomial(lh, lv, boundary).polynomial
            zset = find_zeros(poly)
            classify_zeros(zset)
            self._zeros[key] = zset
        return self._zeros[key]


@pytest.fixture(scope="session")
def store():
    return _Store()
