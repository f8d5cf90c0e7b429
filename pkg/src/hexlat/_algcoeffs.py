"""Verbatim integer constants of the hard-hexagon algebraic equations.

Everything here is data: the auxiliary polynomials in the fugacity z, the
coefficient lists of the degree-24 (high-density) and degree-24-in-kappa
(low-density) algebraic equations for the partition function per site, their
Hauptmodul-rescaled forms, the relation between the two rescaled variables,
and the degree-12 polynomial whose real root locates the negative-axis
crossing of the per-site equimodular curve.

Constants are exact integers; evaluation helpers accept exact or complex z.
The residual-identity test suite cross-validates every table, so a mistyped
digit here cannot survive the tests.
"""


def omega1(z):
    """1 + 11 z - z^2; vanishes at both fugacity singularities."""
    return 1 + 11 * z - z * z


def omega2(z):
    return ((z + 228) * z + 494) * z * z - 228 * z + 1


def omega3(z):
    return (z * z + 1) * ((((z - 522) * z - 10006) * z + 522) * z + 1)


def c_plus(z):
    """Coefficients C_k, k = 0..4, of sum_k C_k * kappa^(6k) = 0 (high density)."""
    o1, o3 = omega1(z), omega3(z)
    z2 = z * z
    z4 = z2 * z2
    z10 = z4 * z4 * z2
    z16 = z10 * z4 * z2
    z22 = z16 * z4 * z2
    return [
        -(3**27) * z22,
        -(3**19) * z16 * o3,
        -(3**10) * z10 * (o3 * o3 - 2430 * z * o1**5),
        -z4 * o3 * (o3 * o3 - 1458 * z * o1**5),
        o1**10,
    ]


def c_minus(z):
    """Coefficients C_k, k = 0..12, of sum_k C_k * kappa^(2k) = 0 (low density)."""
    o1, o2, o3 = omega1(z), omega2(z), omega3(z)
    o15 = o1**5
    z2 = z * z
    z4 = z2 * z2
    z6 = z4 * z2
    z8 = z4 * z4
    z10 = z8 * z2
    z12 = z8 * z4
    z14 = z12 * z2
    z16 = z8 * z8
    z18 = z16 * z2
    z22 = z18 * z4
    return [
        -(2**32) * 3**27 * z22,
        0 * z,
        2**26 * 3**23 * 31 * z18 * o2,
        2**26 * 3**19 * 47 * z16 * o3,
        -(2**17) * 3**18 * 5701 * z14 * o2 * o2,
        -(2**16) * 3**14 * 7**2 * 19 * 37 * z12 * o2 * o3,
        -(2**10) * 3**10 * 7 * z10 * (273001 * o3 * o3
                                      + 2**6 * 3**5 * 5 * 4933 * z * o15),
        -(2**9) * 3**10 * 11 * 13 * 139 * z8 * o3 * o2 * o2,
        -(3**5) * z6 * o2 * (7 * 1028327 * o3 * o3
                             - 2**6 * 3**4 * 11 * 419 * 16811 * z * o15),
        -z4 * o3 * (37 * 79087 * o3 * o3 + 2**6 * 3**6 * 5150251 * z * o15),
        -z2 * o2 * o2 * (19 * 139 * o3 * o3 - 2 * 3**6 * 151 * 317 * z * o15),
        -o2 * o3 * (o3 * o3 - 2 * 613 * z * o15),
        o1**10,
    ]


# Reduction of the low-density equation at the positive singular point,
# in the rescaled variable w = 5^(5/2) kappa^2 / z: degree-11 coefficients
# factoring as (w + 16)^2 (w - 27)^3 (w - 432)^6.
C_MINUS_CRITICAL = [
    -(2**32) * 3**27,
    0,
    2**26 * 3**23 * 31,
    -(2**26) * 3**19 * 47,
    -(2**17) * 3**18 * 5701,
    2**16 * 3**14 * 7**2 * 19 * 37,
    -(2**10) * 3**10 * 7 * 273001,
    2**9 * 3**10 * 11 * 13 * 139,
    -(3**5) * 7 * 1028327,
    37 * 79087,
    -19 * 139,
    1,
]


def hauptmodul(z):
    """1728 z Omega1^5 / Omega3^2 (raises ZeroDivisionError at Omega3 roots)."""
    return 1728 * z * omega1(z)**5 / omega3(z)**2


def p_plus_w(w, h):
    """Rescaled high-density relation P+(W, H); zero on consistent branches."""
    return (h * h * w**4
            + 2**7 * 3**6 * (27 * h - 32) * w**3
            + 2**7 * 3**16 * (45 * h - 32) * w * w
            - 2**12 * 3**25 * w
            - 2**12 * 3**33)


# Inner polynomials of the rescaled low-density relation P-(W, H).
_P11 = (85423588659, -1273194070087, 5683675368960,
        -3624245 * 2**12 * 3**6, 901 * 2**19 * 3**9, -(2**24) * 3**11)
_P10 = (2098366262345322754767, -4991131592299977169590,
        3893219286516719759223, -1056221406812154079936,
        56427952366139092992, -483780265 * 2**17 * 3**5)
_P9 = (15382723254412673871318753, 26277083153777345473689849,
       4098422120568047655974595, 37921229707060286737587,
       1560354561975860656)
_P8 = (1020939125266735071750904401, -1161800973997140083525143956,
       214393801490313112726470774, -2006070488338798415238516,
       59190955246329648961)
_P7 = (508697400997842959916351, -554351605658908065490725,
       -35192800976394203832051, -2775596721861024679)
_P6 = (1245962466251450908065, -15255449815782496728645,
       8457596543456744207175, -13332664262978720611)
_P5 = (114630292396020573, -366034684810378734, 92792159042784817)
_P4 = (938107512437391, -1026461977730478, 933965999427127)
_P3 = (121395557277, -59327302513)
_P2 = (11532609, -1281659)


def _poly_desc(coeffs, h):
    """Evaluate a descending-power coefficient tuple at h."""
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = acc * h + c
    return acc


def p_minus_w(w, h):
    """Rescaled low-density relation P-(W, H); zero on consistent branches."""
    terms = [
        h**6,
        2**12 * 3**7 * _poly_desc(_P11, h),
        2**19 * 3**13 * _poly_desc(_P10, h),
        -(2**32) * 3**18 * _poly_desc(_P9, h),
        -(2**36) * 3**29 * _poly_desc(_P8, h),
        2**52 * 3**38 * _poly_desc(_P7, h),
        2**62 * 3**46 * _poly_desc(_P6, h),
        -(2**77) * 3**56 * _poly_desc(_P5, h),
        -(2**85) * 3**65 * _poly_desc(_P4, h),
        2**100 * 3**73 * _poly_desc(_P3, h),
        -(2**110) * 3**83 * _poly_desc(_P2, h),
        47 * 2**126 * 3**92,
        -(2**132) * 3**99,
    ]
    acc = 0 * w
    for t in terms:
        acc = acc * w + t
    return acc


def w_relation(wm, wp):
    """Degree-six relation tying the low (wm) and high (wp) rescaled variables."""
    return (wm**4 * wp**6
            + 32 * wm**3 * wp**5 * (1509 * wm - 512 * wp)
            - 2 * wm**2 * wp**3 * (wm**3
                                   - 411832512 * wm**2 * wp
                                   + 937623552 * wm * wp**2
                                   - 50331648 * wp**3)
            - 32 * wm * wp**2 * (34791 * wm**4
                                 - 182579836224 * wm**3 * wp
                                 - 1128985165824 * wm**2 * wp**2
                                 - 549067948032 * wm * wp**3
                                 + 8589934592 * wp**4)
            + (wm**4
               - 84091500544 * wm**3 * wp
               - 1482164797440 * wm**2 * wp**2
               - 8145942347776 * wm * wp**3
               + 68719476736 * wp**4)
            * (wm**2 - 172928 * wm * wp + 4096 * wp**2))


# Degree-12 polynomial in the Hauptmodul whose root 1.2699347... marks the
# negative-axis crossing of the per-site equimodular curve (ascending powers).
P12_H = [
    956497920**6,
    -14687865423363371951559480967168 * 176160768**3,
    2184609189525225289847951233328377 * 2**80,
    -4452980987936971936196603653288348935 * 2**73,
    10432786705236893496285793791292996147041 * 2**65,
    -16562829715197286592872531393597405351924479 * 2**57,
    34111250660390601705930372758400977149413250857 * 2**48,
    -11794524087347323954434252908699683281468087505905 * 2**41,
    4687917985071549790872555988500591318811098924601809 * 2**33,
    -963917598568487789731961832547602704647778692096330233 * 2**25,
    180032218185835528405034756761309783218694171171683152985 * 2**16,
    -3035676163450716673183784433435873765727935868148497169025 * 2**9,
    420659520093064357478960957541**2,
]

# Factorization of the ratio polynomial at Hauptmodul 0: the only ratio of
# unit modulus is 1, certifying that both per-site branches coincide there.
RATIO_AT_H0_FACTORS = ((4096, 19683, 6), (4096, -1, 12), (1, -1, 6))


def density_poly_coeffs():
    """Coefficients A_k(z) of the degree-12 density equation, as z-polynomials.

    Returns a list over k = 0..12 of ascending-power integer tuples in z, for
    sum_k A_k(z) rho^k = 0 on the low-density branch.
    """
    p7 = (-1, 13, -66, 165, -220, 165, -77, 22)
    p8 = (-1, 13, -63, 125, -6, -401, 689, -476, 119)

    def add(a, b):
        n = max(len(a), len(b))
        return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                     for i in range(n))

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return tuple(out)

    def scale(a, s):
        return tuple(s * x for x in a)

    one_minus = (-1, 1)  # rho - 1
    rho = (0, 1)

    def rho_pow(n):
        out = (1,)
        for _ in range(n):
            out = mul(out, rho)
        return out

    def om_pow(base, n):
        out = (1,)
        for _ in range(n):
            out = mul(out, base)
        return out

    # term1: rho^11 (rho-1) z^4 ; term2: -(rho^5 z^3 - (rho-1)^5 z) p7
    # term3: rho^2 (rho-1)^2 p8 z^2 ; term4: rho (rho-1)^11
    t1 = mul(rho_pow(11), one_minus)
    t2a = scale(mul(rho_pow(5), p7), -1)
    t2b = mul(om_pow(one_minus, 5), p7)
    t3 = mul(mul(rho_pow(2), om_pow(one_minus, 2)), p8)
    t4 = mul(rho, om_pow(one_minus, 11))

    # combine by power of z: z^0: t4 ; z^1: t2b ; z^2: t3 ; z^3: t2a ; z^4: t1
    by_z = [t4, t2b, t3, t2a, t1]
    deg = max(len(t) for t in by_z)
    coeffs = []
    for k in range(deg):
        coeffs.append(tuple(t[k] if k < len(t) else 0 for t in by_z))
    return coeffs
