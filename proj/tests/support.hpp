#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orbimorse/groups.hpp"
#include "orbimorse/instance.hpp"
#include "orbimorse/quotient.hpp"

namespace testing {

inline std::filesystem::path corpus_dir() { return ORBIMORSE_CORPUS_DIR; }
inline std::filesystem::path data_dir() { return ORBIMORSE_TEST_DATA_DIR; }

inline orbimorse::Instance corpus(const std::string& name) {
    return orbimorse::load_instance(corpus_dir() / (name + ".json"));
}
inline orbimorse::Instance fixture(const std::string& name) {
    return orbimorse::load_instance(data_dir() / (name + ".json"));
}

inline std::vector<orbimorse::Instance> all_corpus() {
    std::vector<orbimorse::Instance> out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(orbimorse::load_instance(f));
    return out;
}

inline orbimorse::Permutation random_permutation(std::size_t degree, std::mt19937_64& rng) {
    orbimorse::Permutation p(degree);
    std::iota(p.begin(), p.end(), 0u);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Closure by repeated products until nothing new appears; independent of the
/// library's breadth-first enumeration.
inline std::set<orbimorse::Permutation> brute_force_closure(std::size_t degree,
                                                             const std::vector<orbimorse::Permutation>& gens) {
    std::set<orbimorse::Permutation> all{orbimorse::identity_permutation(degree)};
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<orbimorse::Permutation> current(all.begin(), all.end());
        for (const auto& a : current)
            for (const auto& g : gens) {
                orbimorse::Permutation c(degree);
                for (std::size_t x = 0; x < degree; ++x) c[x] = g[a[x]];
                if (all.insert(c).second) grew = true;
            }
    }
    return all;
}

/// Orbit labels from the generator images by union-find.
inline std::vector<std::size_t> orbit_labels(std::size_t points, const std::vector<orbimorse::Permutation>& images) {
    std::vector<std::size_t> parent(points);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& img : images)
        for (std::size_t x = 0; x < points; ++x) {
            const auto a = find(x), b = find(img[x]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::size_t> label(points);
    for (std::size_t x = 0; x < points; ++x) label[x] = find(x);
    return label;
}

}  // namespace testing
