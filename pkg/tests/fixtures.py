"""Reference curves and published numbers the suite checks against."""

from approxcurve.polycore import parse_poly

# quartic x^3 y + y^3 x + x^3 + (e/2) x^2 + e y + e/2 with e = 0.001; a cluster of
# eight near-singular points collapses onto one triple point near the origin
TRIPLE = "x^3*y + y^3*x + x^3 + 0.0005*x^2 + 0.001*y + 0.0005"
TRIPLE_EPS = 0.001
TRIPLE_S1 = [
    (0.02131893405 + 0.009609927603j, 0.02442855631 + 0.1171004584j),
    (0.004713033954 + 0.02355323617j, -0.07491796596 - 0.09032199938j),
    (-0.01424770212 + 0.01818884517j, 0.1084633939 + 0.05315246871j),
    (-0.02443272919, -0.1159479025),
    (-0.01424770212 - 0.01818884517j, 0.1084633939 - 0.05315246871j),
    (0.004713033954 - 0.02355323617j, -0.07491796596 + 0.09032199938j),
    (0.02131893405 - 0.009609927603j, 0.02442855631 - 0.1171004584j),
]
TRIPLE_S2 = [(-0.0001666666667, 0.0)]

# quintic with three double points and a spread-out triple cluster at (1, -1)
QUINTIC_SPREAD = (
    "-2.199771784*x^2 - 0.2197717843*x^4*y - 0.9016804979*x^3*y^2 + 1.858817427*x^3"
    " - 1.891680498*y^4 + 0.9899999999*x*y^3 + 0.9899999999*x^2*y - 1.055726141*x^2*y^3"
    " + 0.3409543568*y^2 + 0.9899999999*x^4 + 0.9899999999*x*y^4 + 0.9899999999*y^3"
    " - 0.1869087137*x^5 + 5.235497925*x*y^2 - 1.770497925*x^2*y^2 + 1.45213693*x^3*y"
    " - 0.1440456432*x*y - 0.52786307*y^5 + 0.01"
)
QUINTIC_SPREAD_EPS = 0.005

QUINTIC = (
    "0.006521014507*x^4 + 0.006521014507*x^3*y^2 - 0.3174429862*x^3 + 0.006521014507*x^4*y"
    " + 0.03536521618*y^4 + 0.008903520149*x^2*y^3 - 0.1541837293*y^3 - 0.3561209555*x^2"
    " - 0.2351465855*y^2 + 0.01517989182*x*y^4 + 0.006177658243*y^5 + 0.006521014507*x^5"
    " - 0.6503293396*x*y + 0.006521014507*x^3*y - 0.6965951291*x*y^2 + 0.1751383118*x^2*y^2"
    " + 0.1487535027*x*y^3 - 1.*x^2*y + 0.0000658688334"
)
QUINTIC_EPS = 0.01
QUINTIC_S1 = [
    (-3.999854219, 2.000094837),
    (0.0, 0.0),
    (0.9998153818, -2.999388343),
    (-2.001190360 + 0.05414244305j, 3.001898191 - 0.08039416354j),
    (-1.980207988, 3.002780607),
    (-2.019931003, 2.997118979),
    (-2.001190360 - 0.05414244305j, 3.001898191 + 0.08039416354j),
]
QUINTIC_S2 = [(-2.000000001, 3.000000001)]
QUINTIC_SIMPLE = [(3.437938023, 4.260660564), (7.712891931, 1.573609575)]
QUINTIC_MU = 0.070953

SEXTIC = (
    "-0.5499999998*x + 0.9999999999*y + 0.00002677376171 + 0.006666666664*x^2*y^3"
    " + 0.006666666664*x^4*y + 0.3799999999*x*y^2 - 0.4133333332*x*y^3"
    " + 0.006666666664*x^5*y - 0.01999999999*x*y^5 - 0.1066666667*x^3*y"
    " - 0.07000000000*x^2*y^4 + 0.8066934397*x*y - 0.03333333332*x^2*y"
    " + 0.03999999998*x^3*y^3 + 0.5466666665*x^2*y^2 + 0.1133333333*x^3*y^2"
    " + 0.04999999998*x*y^4 - 0.5333333332*y^3 + 0.006666666664*x^6"
    " + 0.006666666664*x^4*y^2 + 0.006666666664*y^6 - 0.6700000000*x^2"
    " - 0.1766666666*x^4 + 0.3599999999*y^4 - 0.4699999998*x^3 - 0.006666666664*x^5"
    " - 0.6066666665*y^2 - 0.03999999998*y^5"
)
SEXTIC_EPS = 0.004
SEXTIC_SIMPLE = [(-1.330235522, 0.9268173641), (-1.979908167, 0.02661222172),
                 (-2.700785807, -0.07757312293)]
SEXTIC_MU = 0.002425

SEPTIC = (
    "0.005242164122*x + 0.0000006109092905 + 0.4234041949*y - 0.05219720755*x*y^4"
    " - 0.1626221914*x^3*y^2 - 0.006150324474*x^5*y^2 - 0.009115378696*y^3"
    " + 0.01468749412*x^3 - 0.1726592957*y^4 - 0.005178781717*x^5 + 0.0006102983812*y^6"
    " + 0.7056394692*y^2 + 0.007271579029*x^4 - 0.009049345878*x^3*y^4 + 0.02810421594*y^5"
    " + 0.01517536020*x^4*y^3 - 0.03335531981*x*y^3 + 0.07030423460*x^3*y^3"
    " + 0.9999999999*x*y^2 + 0.02396026447*x^5*y + 0.06359239287*x^2*y^3"
    " + 0.0006102983812*x*y^5 + 0.06037915453*x^4*y - 0.05961614786*x^4*y^2"
    " + 0.1735938027*x^2*y^2 + 0.009673386920*x*y - 0.1183998159*x^3*y"
    " - 0.3997312415*x^2*y - 0.01504641433*x^2*y^4 - 0.0002034043985*x^7"
    " + 0.0007152781730*x^6*y + 0.009647777670*x*y^6 - 0.01996027092*x^2"
    " - 0.001858780227*x^6 - 0.008636725103*x^2*y^5 - 0.002554427076*y^7"
)
SEPTIC_EPS = 0.001
SEPTIC_SIMPLE = [(-2.972405737, -7.933174980), (23.79950366, 17.84891277),
                 (-10.06218879, 1.300686562), (24.47385001, 17.37936091)]
SEPTIC_MU = 0.006560

# member (i, j) = (1, 1) of the random quartic family
FAMILY_QUARTIC = (
    "1.000065*y^2 + 1.00000028*y^3 + y^4 + 1.000065*x*y - 11.49999972*x*y^2 + x*y^3"
    " + 0.760065*x^2 + 5.74000028*x^2*y + 3.69*x^2*y^2 - 0.75999972*x^3 - 3.12*x^3*y"
    " + 0.19*x^4 + 0.01*x + 0.01*y"
)
FAMILY_QUARTIC_EPS = 0.01
FAMILY_QUARTIC_U = (0.76, 1.0, 1.0, 1.0, 1.0, 1.0)
FAMILY_QUARTIC_R = (100, 65, 28)
FAMILY_QUARTIC_MU = 0.007541
# published implicit equation of the approximating curve
FAMILY_QUARTIC_OUT = (
    "0.01642553*x^4 + 0.06494377*x^2 + 0.08804654*y^2 - 0.06552116*x^3"
    " + 0.08169391*y^3 + 0.091025077*x*y + 0.49976135*x^2*y - 0.99999999*x*y^2"
    " + 0.08645018*y^4 + 0.31900118*x^2*y^2 - 0.26972458*x^3*y + 0.08645019*x*y^3"
    " - 0.00001398 + 0.00078781*x + 0.0007408*y"
)

# x = 3t/(1+t^3), y = 3t^2/(1+t^3); node at the origin, no point at (0:1:0)
FOLIUM = "x^3 + y^3 - 3*x*y"

# fails the input check: passes through (0:1:0)
NODAL_CUBIC = "y^2 - x^2 - x^3"

# (name, text, eps, cluster multiplicities)
PIPELINE = [
    ("family_quartic", FAMILY_QUARTIC, FAMILY_QUARTIC_EPS, [2, 2, 2]),
    ("quintic", QUINTIC, QUINTIC_EPS, [2, 2, 2, 3]),
    ("quintic_spread", QUINTIC_SPREAD, QUINTIC_SPREAD_EPS, [2, 2, 2, 3]),
    ("sextic", SEXTIC, SEXTIC_EPS, [2, 3, 3, 3]),
    ("septic", SEPTIC, SEPTIC_EPS, [2, 2, 2, 3, 3, 3, 3]),
]


def poly(text):
    return parse_poly(text)
