"""The H-bridge truth table, and how a motor answers a step in duty."""

import itertools

from tapebot import HBridgeInputs, Level, MotorParams, channel_mode, motor_target, step_motor
from tapebot.actuators import mean_motor_speed

H, L = Level.H, Level.L
print("IN1 IN2 PWM STBY  mode")
for in1, in2, duty, stby in itertools.product((H, L), (H, L), (255, 0), (H, L)):
    mode = channel_mode(HBridgeInputs(in1, in2, duty, stby))
    print(f"{in1.name:>3} {in2.name:>3} {duty:>3} {stby.name:>4}  {mode.value}")

# step response: drive at duty 100 for half a second, then pull STBY low and coast
params = MotorParams()
omega, dt = 0.0, 0.001
drive = HBridgeInputs(H, L, 100, H)
coast = HBridgeInputs(H, L, 100, L)
for ms in range(1000):
    inputs = drive if ms < 500 else coast
    target, tau = motor_target(channel_mode(inputs), inputs.pwm_duty, params)
    omega = step_motor(omega, target, tau, dt)
    if ms % 100 == 99:
        print(f"t={ms + 1:4d} ms  omega={omega:6.3f} rad/s")

# the chassis moves on the mean speed over a step, which the lag model gives in closed form
print("mean over a 10 ms step from rest:", mean_motor_speed(0.0, 7.843, params.tau_drive, 0.01))
