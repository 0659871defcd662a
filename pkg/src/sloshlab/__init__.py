"""sloshlab: free-surface inviscid flow laboratory.

Static capillary menisci, nonlinear potential-flow sloshing in translating
containers with no condition imposed at the contact line, and diagnostic
checks of when the contact angle is and is not preserved by the motion.
"""

__version__ = "0.1.0"
