# int_0^T |zeta(1/2 + it)|^4 dt by mpmath quadrature on unit panels (slow: tens of minutes).
import mpmath as m

m.mp.dps = 20
total = m.mpf(0)
for k in range(400):
    total += m.quad(lambda t: abs(m.zeta(m.mpc(0.5, t))) ** 4, m.linspace(k, k + 1, 9))
    if k + 1 in (100, 200, 400):
        print(k + 1, m.nstr(total, 17), flush=True)
