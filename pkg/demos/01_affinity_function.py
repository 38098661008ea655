"""The per-connection pheromone value and its update rule.

Every connection direction carries one number.  A confirmation for a
detected attack adds a fixed boost; a confirmation for a clean delivery
multiplies the value by a decay factor.  This script walks through the two
standard traces: a short burst of three attacks, and a steady stream where
every fifth packet is an attack.
"""

from anttrack import PheromoneEvent, PheromoneParams, PheromoneState, closed_form_value

params = PheromoneParams()  # boost 20, decay 0.95, trail threshold 10
print(f"params: boost +{params.increase}, decay x{params.decay}, threshold {params.threshold}")

##############################################################################
# Short-term behaviour: 100 packets, attacks detected at packets 3, 10, 15.
# The value jumps on each attack and decays geometrically in between.

state = PheromoneState()
events = [
    PheromoneEvent.BAD if i in (3, 10, 15) else PheromoneEvent.GOOD
    for i in range(1, 101)
]
print("\npacket  value   (first 20 packets, then checkpoints)")
for i, ev in enumerate(events, 1):
    if ev is PheromoneEvent.BAD:
        state.apply_bad(params)
    else:
        state.apply_good(params)
    if i <= 20 or i in (50, 100):
        marker = " <- attack" if ev is PheromoneEvent.BAD else ""
        print(f"{i:6d}  {state.value:8.4f}{marker}")

# The incremental updates are O(1) per event.  The same number also has a
# closed form: a sum over past attacks of boost * decay^(clean events since).
print(f"\nincremental end value:  {state.value:.12f}")
print(f"closed-form end value:  {closed_form_value(events, params):.12f}")

##############################################################################
# Long-term behaviour: one attack every 5 packets.  With 4 clean events per
# cycle the post-attack value approaches the fixed point of
# P = P * decay^4 + boost, and the pre-attack trough approaches P - boost.
# Both stay far above the threshold, so the trail never flickers out.

fixed_point = params.increase / (1.0 - params.decay**4)
print(f"\npredicted post-attack limit: {fixed_point:.4f}")
print(f"predicted pre-attack trough: {fixed_point - params.increase:.4f}")

state = PheromoneState()
for i in range(1, 201):
    if i % 5 == 0:
        state.apply_bad(params)
        if i % 50 == 0:
            print(f"packet {i:3d}: post-attack value {state.value:.4f}")
    else:
        state.apply_good(params)
print(f"final trough (packet 199 value, before the next attack): {state.value * params.decay:.4f}")
