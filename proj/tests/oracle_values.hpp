#pragma once
// Generated by tests/oracles/gen_oracles.py (mpmath, sympy, brute force).

namespace oracle {

struct Bessel { double nu, x, j, jp; };
inline constexpr Bessel kBessel[] = {
    {0, 1.5, 0.51182767173591812875, -0.55793650791009964199},
    {2.5, 10, 0.19665848358181841265, 0.14881787186043850163},
    {5, 0.3, 6.3044326337710711158e-7, 0.000010491618190006582358},
    {37, 40, 0.19852887531394734433, -0.0078254306848257096536},
    {60, 75, 0.091693640238907232936, 0.043753450450795648929},
    {120, 110, 0.0033280899375221895127, 0.0015209984070663919874},
    {150, 160, 0.0020436529853023597055, -0.037445414974584707596},
    {250, 240, 0.0067824304574636196824, 0.002118496259256239456},
    {400, 300, 1.328774582110153984e-25, 1.1746888603678055851e-25},
};

struct Airy { double x, ai, aip; };
inline constexpr Airy kAiry[] = {
    {-5, 0.35076100902411431979, 0.32719281855444313679},
    {-1, 0.5355608832923521188, -0.010160567116645209395},
    {0, 0.35502805388781723926, -0.25881940379280679841},
    {2, 0.034924130423274379135, -0.053090384433653631704},
    {8, 4.6922076160992316256e-8, -1.3414392979067865743e-7},
};

struct Scalar { double x, value; };
inline constexpr Scalar kXMinusLog1p[] = {
    {1e-8, 4.9999999666666669167e-17},
    {0.3, 0.037635735532508947965},
    {-0.5, 0.19314718055994530942},
    {5, 3.2082405307719449992},
};
// log G(1 + z)
inline constexpr Scalar kLogBarnesG1p[] = {
    {0.3, 0.067502364494865678894},
    {-0.4, -0.3398287428771271657},
    {2.5, 0.23083252127267864156},
    {7, 17.029703434928092919},
    {11.5, 72.511509332766057012},
    {30, 882.65811885686532627},
    {1e4, 385526207.05119167546},
    {2e6, 26017317314924.13076},
};

struct Toeplitz { int l; double z, log_d; };
inline constexpr Toeplitz kToeplitz[] = {
    {1, 2.0, 2.4249727955154593099},
    {3, 1.7, 2.8411466791007150769},
    {6, 4.0, 15.687047850868031157},
    {10, 3.0, 8.9999951549707243028},
    {12, 9.0, 78.57291669067038468},
};

struct HardEdge { double alpha, s, log_g, v, u; };
// integer alpha from the Toeplitz determinant, otherwise a 50-node Nystrom determinant in z = sqrt(x) in mpmath
inline constexpr HardEdge kHardEdge[] = {
    {1, 10, -0.782313740934845002, 1.20140859041074536, 1.6863396490590073},
    {5, 72.92, -1.16042762377444588, 3.22918407291627841, 7.43034820238502125},
    {10, 200, -1.10735865028138476, 4.45537854070130625, 14.3469565463866875},
    {3, 0.5, -4.07228168128633125e-7, 1.61260881740339509e-6, 6.36955486685481906e-6},
    {2, 30, -1.72642494187560811, 3.0619862125011518, 4.7263714838591131},
    {2.5, 12, -0.1302751468155874, 0.3427236291656727, 0.8202942433692571},
    {0.5, 5, -0.5913614705899163, 0.7737117501636715, 0.959115182380422},
};

struct TracyWidom { double s, F2, dF2; };
// 60-node Nystrom determinant of the Airy kernel on [s, s + 16] in mpmath
inline constexpr TracyWidom kF2[] = {
    {-3, 0.0803195529393345481, 0.1842466838283595},
    {-2, 0.413224142505122555, 0.4413818018617784},
    {-1, 0.807214241999285292, 0.2855509382361543},
    {0, 0.969372828355262668, 0.06697530713277931},
    {1, 0.997505438149389249, 0.007023835292213994},
    {2, 0.999887553698309173, 0.0003791991116936173},
};

// #{sigma in S_k : L(sigma) <= l}, from the Toeplitz series in sympy
inline constexpr const char* kCountsL2[] = {"1", "1", "2", "5", "14", "42", "132", "429", "1430", "4862", "16796", "58786", "208012", "742900", "2674440", "9694845", "35357670"};
inline constexpr const char* kCountsL3[] = {"1", "1", "2", "6", "23", "103", "513", "2761", "15767", "94359", "586590", "3763290", "24792705", "167078577", "1148208090", "8026793118", "56963722223"};
inline constexpr const char* kCountsL4[] = {"1", "1", "2", "6", "24", "119", "694", "4582", "33324", "261808", "2190688", "19318688", "178108704", "1705985883", "16891621166"};

// brute-force #{sigma in S_n : L(sigma) = l}, l = 0..n
inline constexpr long long kBrute5[] = {0, 1, 41, 61, 16, 1};
inline constexpr long long kBrute8[] = {0, 1, 1429, 14337, 17557, 6105, 841, 49, 1};

}  // namespace oracle
