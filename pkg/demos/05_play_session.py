#!/usr/bin/env python3
"""A scripted play session against the machine, round by round.

Drives the session engine directly (the HTTP service wraps the same
store).  Silvia plays a simple script against a machine Juan that
commits the equilibrium time 0.5, so the long-run bankroll hovers
around zero.
"""

from zenoflip.service import SessionStore

store = SessionStore()
session = store.create(game=1, human_role="silvia", ai="nash", seed=42)

script = [0.6, 0.75, 0.9, 1.0, 0.55, 0.8, 0.95, 0.7, 0.85, 1.0] * 4
print(f"{'round':>5} {'T1':>5} {'T2':>5} {'final':>6} {'payoff':>8} {'bankroll':>9}")
for k, t2 in enumerate(script, start=1):
    store.advance_ai(session)
    t1 = session.t1
    record = store.submit(session, "silvia", max(t2, t1))
    print(
        f"{k:>5} {record['t1']:>5.2f} {record['t2']:>5.2f} {record['final']:>6} "
        f"{record['payoff_s']:>+8.2f} {session.bankroll_silvia:>+9.2f}"
    )

print(f"\nafter {session.rounds_played} rounds the bankroll is ${session.bankroll_silvia:+.2f}")
print("against the equilibrium time every reply is even money")
