#ifndef QUATSUB_FIXTURES_HPP
#define QUATSUB_FIXTURES_HPP

// Builtin fixture corpus as manifest sources.

#include "quatsub/manifest.hpp"

#include <map>
#include <string>
#include <vector>

namespace quatsub {

inline const std::map<std::string, std::string>& builtin_manifests() {
    static const std::map<std::string, std::string> corpus = {
        {"example-3-1",
         R"QTOML(name = "example-3-1"
description = "coordinate-permutation submersion R^12 -> R^9 with 3d kernel, canonical triple; all three structures carry the kernel into the horizontal space"

[total]
dim = 12
box_lo = [-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1]
box_hi = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]

[base]
dim = 9

[map]
components = ["x10", "x11", "x12", "x4", "x3", "x2", "x8", "x6", "x7"]

[structure]
kind = "canonical"

[samples]
count = 64
seed = 42
)QTOML"},
        {"example-3-2",
         R"QTOML(name = "example-3-2"
description = "linear submersion R^4 -> R^2 whose kernel is carried to the horizontal space by two structures and preserved by the third"

[total]
dim = 4
box_lo = [-1, -1, -1, -1]
box_hi = [1, 1, 1, 1]

[base]
dim = 2

[map]
components = ["(x2 + x3)/sqrt(2)", "(x1 + x4)/sqrt(2)"]

[structure]
kind = "canonical"

[samples]
count = 64
seed = 42
)QTOML"},
        {"polar",
         R"QTOML(name = "polar"
description = "radius map on the punctured flat plane; circle fibers with mean curvature -(1/r) dr"

[total]
dim = 2
box_lo = [0.2, -2.0]
box_hi = [3.0, 2.0]

[base]
dim = 1

[map]
components = ["sqrt(x1^2 + x2^2)"]

[samples]
count = 64
seed = 42
)QTOML"},
        {"polar-warped",
         R"QTOML(name = "polar-warped"
description = "dr^2 + r^2 ds^2 with projection to r; vertical foliation umbilic and spheric but not geodesic"

[total]
dim = 2
metric = [["1", "0"], ["0", "x1^2"]]
box_lo = [0.5, -2.0]
box_hi = [3.0, 2.0]

[base]
dim = 1

[map]
components = ["x1"]

[samples]
count = 64
seed = 42
)QTOML"},
        {"twisted-exp",
         R"QTOML(name = "twisted-exp"
description = "dr^2 + exp(2 r s) ds^2 with projection to r; vertical foliation umbilic but not spheric"

[total]
dim = 2
metric = [["1", "0"], ["0", "exp(2*x1*x2)"]]
box_lo = [0.5, 0.5]
box_hi = [2.0, 2.0]

[base]
dim = 1

[map]
components = ["x1"]

[samples]
count = 64
seed = 42
)QTOML"},
        {"heisenberg",
         R"QTOML(name = "heisenberg"
description = "left-invariant metric dx^2 + dy^2 + (dz - (x dy - y dx)/2)^2 with projection to the flat plane; non-integrable horizontal distribution"

[total]
dim = 3
metric = [
  ["1 + x2^2/4", "-x1*x2/4", "x2/2"],
  ["-x1*x2/4", "1 + x1^2/4", "-x1/2"],
  ["x2/2", "-x1/2", "1"],
]
box_lo = [-1.0, -1.0, -1.0]
box_hi = [1.0, 1.0, 1.0]

[base]
dim = 2

[map]
components = ["x1", "x2"]

[samples]
count = 64
seed = 42
)QTOML"},
        {"flat-product",
         R"QTOML(name = "flat-product"
description = "flat product projection R^4 -> R^2 with canonical triple; equal fiber and base dimensions"

[total]
dim = 4
box_lo = [-1, -1, -1, -1]
box_hi = [1, 1, 1, 1]

[base]
dim = 2

[map]
components = ["x3", "x4"]

[structure]
kind = "canonical"

[samples]
count = 64
seed = 42
)QTOML"},
        {"gibbons-hawking-v0",
         R"QTOML(name = "gibbons-hawking-v0"
description = "flat-potential bundle: euclidean R^4 over euclidean R^3 with canonical triple; 1d kernel carried horizontal by all three structures"

[total]
dim = 4
box_lo = [-1, -1, -1, -1]
box_hi = [1, 1, 1, 1]

[base]
dim = 3

[map]
components = ["x1", "x2", "x3"]

[structure]
kind = "canonical"

[samples]
count = 64
seed = 42
)QTOML"},
        {"gibbons-hawking-v1",
         R"QTOML(name = "gibbons-hawking-v1"
description = "curved 4d fiber bundle over a conformally flat 3d base, potential 1 + 1/(2r); box keeps r > 0.5"

[total]
dim = 4
metric = [
  ["(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 4*x1^4*sqrt(x1^2 + x2^2 + x3^2) + x1^4 + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 8*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 3*x1^2*x2^2 + 4*x2^6 + 4*x2^4*x3^2 + 4*x2^4*sqrt(x1^2 + x2^2 + x3^2) + 2*x2^4 + 2*x2^2*x3^2 - 2*x2^2*x3*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 4*x2^6 + 4*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "(-x1^3*x2 - x1*x2^3 - 2*x1*x2*x3^2 + 2*x1*x2*x3*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 4*x2^6 + 4*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "0", "(x2*x3 - x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)"],
  ["(-x1^3*x2 - x1*x2^3 - 2*x1*x2*x3^2 + 2*x1*x2*x3*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 4*x2^6 + 4*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 4*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 2*x1^4 + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 8*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 3*x1^2*x2^2 + 2*x1^2*x3^2 - 2*x1^2*x3*sqrt(x1^2 + x2^2 + x3^2) + 4*x2^6 + 4*x2^4*x3^2 + 4*x2^4*sqrt(x1^2 + x2^2 + x3^2) + x2^4)/(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 4*x2^6 + 4*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "0", "(-x1*x3 + x1*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)"],
  ["0", "0", "(2*sqrt(x1^2 + x2^2 + x3^2) + 1)/(2*sqrt(x1^2 + x2^2 + x3^2))", "0"],
  ["(x2*x3 - x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "(-x1*x3 + x1*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "0", "2*sqrt(x1^2 + x2^2 + x3^2)/(2*sqrt(x1^2 + x2^2 + x3^2) + 1)"],
]
box_lo = [0.6, -0.4, 0.6, -0.5]
box_hi = [1.4, 0.4, 1.4, 0.5]

[base]
dim = 3
metric = [
  ["1 + 1/(2*sqrt(x1^2 + x2^2 + x3^2))", "0", "0"],
  ["0", "1 + 1/(2*sqrt(x1^2 + x2^2 + x3^2))", "0"],
  ["0", "0", "1 + 1/(2*sqrt(x1^2 + x2^2 + x3^2))"],
]

[map]
components = ["x1", "x2", "x3"]

[structure]
kind = "explicit"
I = [
  ["(x2*x3 - x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "(2*x1^3 + 2*x1*x2^2 + 2*x1*x3^2 - 2*x1*x3*sqrt(x1^2 + x2^2 + x3^2) - x1*x3 + x1*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^4 + 8*x1^2*x2^2 + 4*x1^2*x3^2 + 4*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 4*x2^4 + 4*x2^2*x3^2 + 4*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "0", "2*sqrt(x1^2 + x2^2 + x3^2)/(2*sqrt(x1^2 + x2^2 + x3^2) + 1)"],
  ["0", "0", "-1", "0"],
  ["0", "1", "0", "0"],
  ["(-4*x1^6 - 12*x1^4*x2^2 - 4*x1^4*x3^2 - 4*x1^4*sqrt(x1^2 + x2^2 + x3^2) - x1^4 - 12*x1^2*x2^4 - 8*x1^2*x2^2*x3^2 - 8*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) - 3*x1^2*x2^2 - 4*x2^6 - 4*x2^4*x3^2 - 4*x2^4*sqrt(x1^2 + x2^2 + x3^2) - 2*x2^4 - 2*x2^2*x3^2 + 2*x2^2*x3*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 4*x2^6 + 4*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "(-4*x1^3*x2*x3 + 2*x1^3*x2*sqrt(x1^2 + x2^2 + x3^2) + x1^3*x2 - 4*x1*x2^3*x3 + 2*x1*x2^3*sqrt(x1^2 + x2^2 + x3^2) + x1*x2^3 - 4*x1*x2*x3^3 + 4*x1*x2*x3^2*sqrt(x1^2 + x2^2 + x3^2) + 2*x1*x2*x3^2 - 2*x1*x2*x3*sqrt(x1^2 + x2^2 + x3^2))/(8*x1^6*sqrt(x1^2 + x2^2 + x3^2) + 8*x1^6 + 24*x1^4*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 24*x1^4*x2^2 + 8*x1^4*x3^2*sqrt(x1^2 + x2^2 + x3^2) + 8*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 24*x1^2*x2^4*sqrt(x1^2 + x2^2 + x3^2) + 24*x1^2*x2^4 + 16*x1^2*x2^2*x3^2*sqrt(x1^2 + x2^2 + x3^2) + 16*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 8*x2^6*sqrt(x1^2 + x2^2 + x3^2) + 8*x2^6 + 8*x2^4*x3^2*sqrt(x1^2 + x2^2 + x3^2) + 8*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "(-x1*x3 + x1*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2))", "(-x2*x3 + x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)"],
]
J = [
  ["0", "0", "1", "0"],
  ["(x2*x3 - x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "(2*x1^3 + 2*x1*x2^2 + 2*x1*x3^2 - 2*x1*x3*sqrt(x1^2 + x2^2 + x3^2) - x1*x3 + x1*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^4 + 8*x1^2*x2^2 + 4*x1^2*x3^2 + 4*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 4*x2^4 + 4*x2^2*x3^2 + 4*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "0", "2*sqrt(x1^2 + x2^2 + x3^2)/(2*sqrt(x1^2 + x2^2 + x3^2) + 1)"],
  ["-1", "0", "0", "0"],
  ["(x1^3*x2 + x1*x2^3 + 2*x1*x2*x3^2 - 2*x1*x2*x3*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^6 + 12*x1^4*x2^2 + 4*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 12*x1^2*x2^4 + 8*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 4*x2^6 + 4*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "(-8*x1^6*sqrt(x1^2 + x2^2 + x3^2) - 12*x1^6 - 24*x1^4*x2^2*sqrt(x1^2 + x2^2 + x3^2) - 36*x1^4*x2^2 - 8*x1^4*x3^2*sqrt(x1^2 + x2^2 + x3^2) - 12*x1^4*x3^2 + 4*x1^4*x3 - 8*x1^4*sqrt(x1^2 + x2^2 + x3^2) - 2*x1^4 - 24*x1^2*x2^4*sqrt(x1^2 + x2^2 + x3^2) - 36*x1^2*x2^4 - 16*x1^2*x2^2*x3^2*sqrt(x1^2 + x2^2 + x3^2) - 24*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*x3 - 14*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) - 3*x1^2*x2^2 + 4*x1^2*x3^3 - 4*x1^2*x3^2*sqrt(x1^2 + x2^2 + x3^2) - 2*x1^2*x3^2 + 2*x1^2*x3*sqrt(x1^2 + x2^2 + x3^2) - 8*x2^6*sqrt(x1^2 + x2^2 + x3^2) - 12*x2^6 - 8*x2^4*x3^2*sqrt(x1^2 + x2^2 + x3^2) - 12*x2^4*x3^2 - 6*x2^4*sqrt(x1^2 + x2^2 + x3^2) - x2^4)/(8*x1^6*sqrt(x1^2 + x2^2 + x3^2) + 8*x1^6 + 24*x1^4*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 24*x1^4*x2^2 + 8*x1^4*x3^2*sqrt(x1^2 + x2^2 + x3^2) + 8*x1^4*x3^2 + 2*x1^4*sqrt(x1^2 + x2^2 + x3^2) + 24*x1^2*x2^4*sqrt(x1^2 + x2^2 + x3^2) + 24*x1^2*x2^4 + 16*x1^2*x2^2*x3^2*sqrt(x1^2 + x2^2 + x3^2) + 16*x1^2*x2^2*x3^2 + 4*x1^2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + 8*x2^6*sqrt(x1^2 + x2^2 + x3^2) + 8*x2^6 + 8*x2^4*x3^2*sqrt(x1^2 + x2^2 + x3^2) + 8*x2^4*x3^2 + 2*x2^4*sqrt(x1^2 + x2^2 + x3^2))", "(-x2*x3 + x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2))", "(x1*x3 - x1*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)"],
]
K = [
  ["0", "-1", "0", "0"],
  ["1", "0", "0", "0"],
  ["(x2*x3 - x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "(2*x1^3 + 2*x1*x2^2 + 2*x1*x3^2 - 2*x1*x3*sqrt(x1^2 + x2^2 + x3^2) - x1*x3 + x1*sqrt(x1^2 + x2^2 + x3^2))/(4*x1^4 + 8*x1^2*x2^2 + 4*x1^2*x3^2 + 4*x1^2*sqrt(x1^2 + x2^2 + x3^2) + x1^2 + 4*x2^4 + 4*x2^2*x3^2 + 4*x2^2*sqrt(x1^2 + x2^2 + x3^2) + x2^2)", "0", "2*sqrt(x1^2 + x2^2 + x3^2)/(2*sqrt(x1^2 + x2^2 + x3^2) + 1)"],
  ["(x1*x3 - x1*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2))", "(x2*x3 - x2*sqrt(x1^2 + x2^2 + x3^2))/(2*x1^2*sqrt(x1^2 + x2^2 + x3^2) + 2*x2^2*sqrt(x1^2 + x2^2 + x3^2))", "(-2*sqrt(x1^2 + x2^2 + x3^2) - 1)/(2*sqrt(x1^2 + x2^2 + x3^2))", "0"],
]

[samples]
count = 64
seed = 42
)QTOML"},
    };
    return corpus;
}

inline std::vector<std::string> builtin_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : builtin_manifests()) names.push_back(k);
    return names;
}

inline const std::string& builtin_manifest(const std::string& name) {
    auto it = builtin_manifests().find(name);
    if (it == builtin_manifests().end())
        throw ManifestError("unknown builtin fixture '" + name + "'");
    return it->second;
}

inline LoadedFixture load_builtin(const std::string& name) {
    return load_fixture(builtin_manifest(name));
}

}  // namespace quatsub

#endif  // QUATSUB_FIXTURES_HPP
