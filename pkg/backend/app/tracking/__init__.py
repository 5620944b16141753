# Exact tracking domain
