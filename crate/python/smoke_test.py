"""Smoke test for the polyrecon Python extension.

Build and install first:
    pip install -e crates/python --no-build-isolation
"""

import polyrecon


def main():
    cube = polyrecon.Polytope.fixture("cube")
    assert cube.dim == 3 and len(cube) == 8 and cube.is_simple()

    recovered = polyrecon.reconstruct(cube, nmax=8)
    assert polyrecon.vertex_set_distance(recovered, cube.exact_vertices()) == 0.0

    poly8 = polyrecon.Polytope.fixture("poly8")
    approx = polyrecon.reconstruct(poly8, n=8, bits=64)
    dist = polyrecon.vertex_set_distance(approx, poly8.exact_vertices())
    assert dist < 1e-6, dist

    square = polyrecon.Polytope([["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]])
    mu = polyrecon.moments(square, ["1", "2"], 3)
    assert mu[0] == ("1", "0"), mu
    assert mu[1] == ("3/2", "0"), mu

    rand = polyrecon.Polytope.generate(3, seed=5, facets=6)
    assert rand.dim == 3 and rand.is_simple()

    try:
        polyrecon.reconstruct(cube)
    except ValueError:
        pass
    else:
        raise AssertionError("missing vertex count was accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
