"""High-precision reference values for L x L cylindrical lattices.

Endpoint locations of the zero distribution (nearest negative real zero and
the complex zero closest to the positive axis) for sizes up to 39.  Values
at L <= 21 are reproducible on a workstation with this package's own
`partition`/`zeros` pipeline; the larger sizes serve as regression anchors
and give the finite-size scaling fits a longer lever arm.
"""

ZD_CYLINDER = {
    9: -0.0957417573, 12: -0.0932266680, 15: -0.0920714392,
    18: -0.0914523473, 21: -0.0910853230, 24: -0.0908515103,
    27: -0.0906942824, 30: -0.0905839894, 33: -0.0905039451,
    36: -0.0904442058, 39: -0.0903985638,
}

ZC_CYLINDER = {
    9: 5.9002937473 + 12.2312152474j, 12: 9.2335210855 + 9.3476347389j,
    15: 10.5114514245 + 7.2812520022j, 18: 11.0571925423 + 5.8559364459j,
    21: 11.3084528958 + 4.8492670401j, 24: 11.4268383658 + 4.1113758041j,
    27: 11.4806273673 + 3.5521968857j, 30: 11.5012919280 + 3.1162734906j,
    33: 11.5044258314 + 2.7682753249j, 36: 11.4981796564 + 2.4848695493j,
    39: 11.4869896404 + 2.2501329582j,
}
