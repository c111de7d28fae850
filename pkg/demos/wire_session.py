"""
A session over the wire
=======================

Prover and verifier talk through a socket pair in length-prefixed frames.
The captured traffic can be re-verified later.
"""

import random
import threading

from csazkp import keygen
from csazkp.wire import SessionConfig, captured_verdict, replay_session, run_session, socket_pair

rng = random.Random(11)
kp = keygen("matrix", 2, 3, rng)
cfg = SessionConfig(protocol=1, rounds=5)

a, b = socket_pair()
out = {}
t = threading.Thread(target=lambda: out.setdefault("prover", run_session("prover", a, cfg, kp, random.Random(1))))
t.start()
result = run_session("verifier", b, cfg, kp.public, random.Random(2))
t.join()

for direction, msg in result.frames:
    print(f"{direction:>3} {msg.type.name:<14} {len(msg.payload):6d} bytes")
print("verdict:", result.accepted, "- prover saw:", out["prover"].accepted)
print("offline replay:", replay_session(kp.public, result.frames, cfg), "captured:", captured_verdict(result.frames))
