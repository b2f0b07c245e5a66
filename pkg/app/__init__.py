"""Complete sequential flexibility toolkit: symbolic language-equation solving for latch splits"""
