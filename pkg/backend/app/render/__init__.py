# Artifact renderers
