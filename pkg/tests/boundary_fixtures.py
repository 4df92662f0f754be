"""Frozen boundary transition-set components for the quartic family

    F = x^4 - lam*x + a1 + a2*lam + a3*x^2   on  U = [-2, 2], L = [1, 3].

Each component was re-derived independently by symbolic elimination and then
verified by witness substitution: rational points sampled on the
pre-elimination system project onto exact zeros of every polynomial below
(see the witness tests in test_bifurcation.py).  The strings are the
implementation's canonical rendering (squarefree, content 1, sign-normalized)
and serve as the regression oracle.

Note on the germ: the variant family with an a1*x term in place of the
constant a1 does not reproduce these components; every derivation below (for
instance the corner values 14, 10, 18, 22 in L_C and the G_2 polynomial
16 + a1 + 4*a3) follows from the constant reading used here.

System order: x-boundary families list x = -2 before x = 2; lambda-boundary
families list lam = 1 before lam = 3; L_C orders corners (-2,1), (-2,3),
(2,1), (2,3).
"""

BOUNDARY_COMPONENTS = {
    "L_C": [
        ["18 + a1 + a2 + 4*a3"],
        ["22 + a1 + 3*a2 + 4*a3"],
        ["14 + a1 + a2 + 4*a3"],
        ["10 + a1 + 3*a2 + 4*a3"],
    ],
    "L_SH": [
        ["-48 + a1 - 32*a2 - 4*a3 - 4*a2*a3"],
        ["-48 + a1 + 32*a2 - 4*a3 + 4*a2*a3"],
    ],
    "L_SV": [
        ["-27 + 144*a1*a3 + 144*a2*a3 + 256*a1^3 + 768*a1^2*a2"
         " + 768*a1*a2^2 + 256*a2^3 - 4*a3^3 - 128*a1^2*a3^2"
         " - 256*a1*a2*a3^2 - 128*a2^2*a3^2 + 16*a1*a3^4 + 16*a2*a3^4"],
        ["-2187 + 1296*a1*a3 + 3888*a2*a3 + 256*a1^3 + 2304*a1^2*a2"
         " + 6912*a1*a2^2 + 6912*a2^3 - 36*a3^3 - 128*a1^2*a3^2"
         " - 768*a1*a2*a3^2 - 1152*a2^2*a3^2 + 16*a1*a3^4 + 48*a2*a3^4"],
    ],
    "L_T": [
        ["16 + a1 + 4*a3", "2 + a2"],
        ["16 + a1 + 4*a3", "-2 + a2"],
    ],
    "G_1": [
        ["-73728 - 19968*a1 + 12288*a2 - 67584*a3 - 2144*a1^2 + 4352*a1*a2"
         " - 7424*a1*a3 - 8192*a2^2 - 35840*a2*a3 - 22016*a3^2 + 54*a1^3"
         " - 3440*a1^2*a2 - 72*a1^2*a3 + 29696*a1*a2^2 - 1408*a1*a2*a3"
         " - 224*a1*a3^2 - 81920*a2^3 - 25600*a2^2*a3 - 27392*a2*a3^2"
         " - 2944*a3^3 + 27*a1^3*a2 - 1184*a1^2*a2^2 - 396*a1^2*a2*a3"
         " + 11264*a1*a2^3 + 9344*a1*a2^2*a3 - 48*a1*a2*a3^2 + 32*a1*a3^3"
         " - 32768*a2^4 - 53248*a2^3*a3 - 18944*a2^2*a3^2 - 5696*a2*a3^3"
         " - 128*a3^4 - 180*a1^2*a2^2*a3 + 4096*a1*a2^3*a3"
         " + 768*a1*a2^2*a3^2 + 48*a1*a2*a3^3 - 20480*a2^4*a3"
         " - 14592*a2^3*a3^2 - 4416*a2^2*a3^3 - 320*a2*a3^4"
         " + 368*a1*a2^3*a3^2 + 24*a1*a2^2*a3^3 - 4608*a2^4*a3^2"
         " - 2048*a2^3*a3^3 - 288*a2^2*a3^4 + 4*a1*a2^3*a3^3"
         " - 448*a2^4*a3^3 - 112*a2^3*a3^4 - 16*a2^4*a3^4"],
        ["73728 + 19968*a1 + 12288*a2 + 67584*a3 + 2144*a1^2 + 4352*a1*a2"
         " + 7424*a1*a3 + 8192*a2^2 - 35840*a2*a3 + 22016*a3^2 - 54*a1^3"
         " - 3440*a1^2*a2 + 72*a1^2*a3 - 29696*a1*a2^2 - 1408*a1*a2*a3"
         " + 224*a1*a3^2 - 81920*a2^3 + 25600*a2^2*a3 - 27392*a2*a3^2"
         " + 2944*a3^3 + 27*a1^3*a2 + 1184*a1^2*a2^2 - 396*a1^2*a2*a3"
         " + 11264*a1*a2^3 - 9344*a1*a2^2*a3 - 48*a1*a2*a3^2 - 32*a1*a3^3"
         " + 32768*a2^4 - 53248*a2^3*a3 + 18944*a2^2*a3^2 - 5696*a2*a3^3"
         " + 128*a3^4 + 180*a1^2*a2^2*a3 + 4096*a1*a2^3*a3"
         " - 768*a1*a2^2*a3^2 + 48*a1*a2*a3^3 + 20480*a2^4*a3"
         " - 14592*a2^3*a3^2 + 4416*a2^2*a3^3 - 320*a2*a3^4"
         " + 368*a1*a2^3*a3^2 - 24*a1*a2^2*a3^3 + 4608*a2^4*a3^2"
         " - 2048*a2^3*a3^3 + 288*a2^2*a3^4 + 4*a1*a2^3*a3^3"
         " + 448*a2^4*a3^3 - 112*a2^3*a3^4 + 16*a2^4*a3^4"],
    ],
    "G_2": [
        ["16 + a1 + 4*a3"],
    ],
}
