"""From a tilted hand to a drive command.

Walks the control-unit sensing chain end to end: tilt in g, the 10-bit ADC
counts it quantizes to, and the command the classifier picks. Then shows why
the engage/release hysteresis exists, by replaying a trembling hand that
hovers around the threshold.
"""

from roversim import AccelSample, AdcReading, DriveCommand, classify, sample_to_counts

print("tilt sweep on the y axis (x level)")
print(f"{'y_g':>6} {'counts':>7} {'command':>9}")
prev = DriveCommand.STOP
for y10 in range(-12, 13, 2):
    y_g = y10 / 10
    reading = sample_to_counts(AccelSample(x_g=0.0, y_g=y_g))
    prev = classify(reading, prev)
    print(f"{y_g:>6.1f} {reading.y_counts:>7} {prev.name.title():>9}")

print()
print("a trembling hand: deflection alternating 22 and 35 counts")
print("(release threshold is 20, engage threshold is 30)")
prev = DriveCommand.STOP
history = []
for i in range(12):
    dy = 22 if i % 2 == 0 else 35
    prev = classify(AdcReading(x_counts=338, y_counts=338 + dy), prev)
    history.append(prev.name.title())
print(" -> ".join(history))
print("once engaged, 22 counts keeps the command; it never chatters back to Stop")
