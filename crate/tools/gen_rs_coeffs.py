"""Emit the Riemann-Siegel correction polynomials C_k(z), z = 2p - 1, as Rust.

The coefficients are generated from the d-recursion of Arias de Reyna (the
same recursion mpmath uses in rszeta.py) and then rotated into the classical
real normalization, so that

    Z(t) = 2 sum_{n<=N} cos(theta(t) - t ln n)/sqrt(n)
           + (-1)^(N-1) a^(-1/2) sum_k C_k(2p - 1) a^(-k),   a = sqrt(t/2pi).

Usage: python3 tools/gen_rs_coeffs.py > crates/core/src/zeta_core/rs_coeffs.rs
"""
# Generates classical Riemann-Siegel correction polynomials C_k(z), z = 2p-1,
# from the Arias de Reyna d-recursion (as in mpmath.rszeta) and checks them
# against the closed-form C_0..C_4.
import mpmath as mp, sys
mp.mp.dps = 80
L = 11
NT = 140
# Taylor coeffs of F(x) around 0 via Cauchy integral
def F(x):
    return (mp.expjpi(x*x/2+mp.mpf(3)/8) - 1j*mp.sqrt(2)*mp.cos(mp.pi*x/2))/(2*mp.cos(mp.pi*x))
r = mp.mpf(3); M = 1024
vals = [F(r*mp.expjpi(2*mp.mpf(j)/M)) for j in range(M)]
c = []
for k in range(NT):
    s = mp.fsum(vals[j]*mp.expjpi(-2*mp.mpf(j*k)/M) for j in range(M))
    c.append(s/M / r**k)
# d recursion, sigma = 1/2
d = {}
def D(n,k): return d.get((n,k),0)
d[(0,0)] = mp.mpf(1)
for n in range(1,L):
    for k in range(0,3*n//2+1):
        m = 3*n-2*k
        if m != 0:
            d[(n,k)] = -(m+1)*D(n-1,k-2) + mp.mpf(1)/(4*m)*D(n-1,k)
        else:
            v = mp.mpf(0)
            for rr in range(0,k):
                v -= (-1)**(k-rr) * D(n,rr)*mp.fac(2*k-2*rr)/mp.fac(k-rr)
            d[(n,k)] = v
# series ops in variable x (AdR p).  x = -z.
def deriv(series, m):
    return [series[j+m]*mp.fac(j+m)/mp.fac(j) for j in range(len(series)-m)]
def Cprime(k):
    L_ = NT - 3*k - 2
    out = [mp.mpc(0)]*L_
    for ell in range(0, 3*k//2+1):
        coef = D(k,ell)/(mp.pi**(2*k-ell) * (2j)**ell)
        dv = deriv(c, 3*k-2*ell)
        for j in range(L_): out[j] += coef*dv[j]
    return out
Cp = [Cprime(k) for k in range(L)]
# delta = theta - arg in powers of a^-2, t = 2 pi a^2
# theta tail: 1/(48t)+7/(5760t^3)+31/(80640t^5)+127/(430080t^7)+511/(1216512 t^9)
tail = {1: mp.mpf(1)/48, 3: mp.mpf(7)/5760, 5: mp.mpf(31)/80640, 7: mp.mpf(127)/430080, 9: mp.mpf(511)/1216512}
# delta as series in u = a^-2
K2 = L//2 + 2
delta = [mp.mpf(0)]*(K2+1)
for pw,cf in tail.items():
    if pw <= K2: delta[pw] += cf/(2*mp.pi)**pw
# exp(i delta) series
def mul(a,b):
    out=[mp.mpc(0)]*(K2+1)
    for i in range(K2+1):
        for j in range(K2+1-i): out[i+j]+=a[i]*b[j]
    return out
e = [mp.mpc(0)]*(K2+1); e[0]=1
term = [mp.mpc(0)]*(K2+1); term[0]=1
for n in range(1,K2+1):
    term = mul(term, [1j*x for x in delta]); term=[x/n for x in term]
    e = [e[i]+term[i] for i in range(K2+1)]
C = []
for k in range(L):
    L_ = len(Cp[k])
    acc = [mp.mpc(0)]*L_
    for j in range(0, k//2+1):
        src = Cp[k-2*j]
        for i in range(L_): acc[i] += e[j]*src[i]
    # convert x -> z = -x
    C.append([2*mp.re(acc[i])*(-1)**i for i in range(L_)])

print("// Generated by tools/gen_rs_coeffs.py. Do not edit by hand.")
print("//")
print("// C_k(z) for z = 2p - 1. Even k are even polynomials and odd k are odd, so")
print("// only the nonzero parity is stored: C_k(z) = z^(k mod 2) * sum_j c[j] z^(2j).")
print()
print("pub(crate) const MAX_TERMS: usize = %d;" % 10)
print()
print("pub(crate) static RS_COEFFS: [&[f64]; MAX_TERMS] = [")
for k in range(10):
    vals = [C[k][i] for i in range(k % 2, len(C[k]), 2)]
    vals = [float(v) for v in vals]
    while vals and abs(vals[-1]) < 1e-21:
        vals.pop()
    print("    &[")
    for v in vals:
        print("        %s," % repr(v) if 'e' in repr(v) or '.' in repr(v) else "        %s.0," % repr(v))
    print("    ],")
print("];")
