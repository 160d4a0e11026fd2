#!/usr/bin/env python3
"""How coin-position entanglement grows, and what disorder does to it.

An ordered Hadamard walk settles toward a long-time entanglement value that
depends strongly on the initial coin state.  Driving the same walk with the
20-symbol mixed H/F sequence instead pushes the 20-step entanglement close
to maximal for every initial state we try.
"""

from dtqw import (
    ENHANCER_20,
    DynamicSequence,
    InitialCoin,
    Ordered,
    asymptotic_entropy,
    entropy_curve,
    hadamard_coin,
)


def main() -> None:
    theta = 51.0
    ordered = Ordered(hadamard_coin())

    print("Ordered Hadamard walk, theta = 51 deg")
    print(f"{'phi':>6} {'S_E(5)':>8} {'S_E(10)':>8} {'S_E(20)':>8} {'long-time':>10}")
    for phi in (0.0, 90.0, 180.0):
        init = InitialCoin(theta, phi)
        curve = dict(entropy_curve(init, ordered, 20))
        tail = asymptotic_entropy(init, ordered, steps=1024, tail=64)
        print(
            f"{phi:6.0f} {curve[5]:8.4f} {curve[10]:8.4f} {curve[20]:8.4f} {tail:10.4f}"
        )
    print()
    print("The long-time values spread over ~0.26 between phi = 0 and 180 deg:")
    print("the ordered walk remembers its initial state forever.")
    print()

    print(f"Same walks driven by the sequence {ENHANCER_20}:")
    print(f"{'phi':>6} {'S_E(5)':>8} {'S_E(10)':>8} {'S_E(20)':>8}")
    disordered = DynamicSequence(ENHANCER_20)
    values = []
    for phi in (0.0, 90.0, 180.0, 270.0):
        init = InitialCoin(theta, phi)
        curve = dict(entropy_curve(init, disordered, 20))
        values.append(curve[20])
        print(f"{phi:6.0f} {curve[5]:8.4f} {curve[10]:8.4f} {curve[20]:8.4f}")
    print()
    print(
        f"All four end within {max(values) - min(values):.4f} of each other, "
        f"at {min(values):.3f}+ - the enhancement does not care where the coin started."
    )


if __name__ == "__main__":
    main()
