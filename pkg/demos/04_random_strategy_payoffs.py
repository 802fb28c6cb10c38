#!/usr/bin/env python3
"""Random-strategy payoffs: quadrature against Monte Carlo.

Both players draw their times uniformly over the legal triangle.  The
first game is exactly even; the third measurement tilts the expected
payoff to Silvia by $0.25 per $1 staked.
"""

from zenoflip import GameSpec, monte_carlo_payoff, random_strategy_payoff

for number, game in ((1, GameSpec.two_measure()), (2, GameSpec.three_measure())):
    quad = random_strategy_payoff(game)
    mc = monte_carlo_payoff(game, trials=10**6, seed=number)
    print(f"game {number}:")
    print(f"  quadrature   pi_s={quad.pi_s:.9f}  payoff_s=${quad.payoff_s:+.4f}  est err={quad.error_estimate:.1e}")
    print(f"  monte carlo  pi_s={mc.pi_s:.9f}  payoff_s=${mc.payoff_s:+.4f}  3sigma={mc.error_estimate:.1e}")
    for note in quad.notes:
        print(f"  note: {note}")
    print()

print("best replies in the first game:")
from zenoflip import best_response, maximin_strategy

for t1 in (0.25, 0.5, 0.75):
    reply = best_response(GameSpec.two_measure(), t1)
    print(f"  T1={t1}: T2*={reply.t2_star:.4f}, value={reply.value:.6f}")

for number, game in ((1, GameSpec.two_measure()), (2, GameSpec.three_measure())):
    mm = maximin_strategy(game, 1001)
    print(f"game {number} maximin: T1*={mm.t1_star:.4f}, value={mm.game_value:.6f}, flat={mm.flat}")
