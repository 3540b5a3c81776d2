from hypothesis import settings

# S4 instances can take longer than hypothesis' default per-example deadline
settings.register_profile("bispace", max_examples=60, deadline=None)
settings.load_profile("bispace")
