# PrivTrack - exact analysis of private 1-D tracking
