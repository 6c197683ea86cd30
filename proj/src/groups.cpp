#include "orbimorse/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "orbimorse/error.hpp"

namespace orbimorse {

bool is_permutation(std::span<const std::uint32_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (auto v : images) {
        if (v >= images.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation identity_permutation(std::size_t degree) {
    Permutation p(degree);
    for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint32_t>(i);
    return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Permutation inverse(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
    return r;
}

int parity(std::span<const std::uint32_t> images) {
    // Sign from cycle decomposition of the ranking permutation; works for any
    // list of distinct values.
    std::vector<std::uint32_t> sorted(images.begin(), images.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> rank(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        rank[i] = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), images[i]) - sorted.begin());
    std::vector<bool> visited(images.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < rank.size(); ++i) {
        if (visited[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !visited[j]; j = rank[j]) {
            visited[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

std::size_t default_group_cap() {
    if (const char* env = std::getenv("ORBIMORSE_GROUP_CAP")) {
        try {
            const auto v = std::stoull(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 10080;
}

FiniteGroup FiniteGroup::generate(std::size_t degree, std::vector<Permutation> generators,
                                  std::size_t cap) {
    if (degree == 0) throw Error(ErrorCode::MalformedPermutation, "group degree must be positive");
    for (const auto& g : generators) {
        if (g.size() != degree || !is_permutation(g))
            throw Error(ErrorCode::MalformedPermutation,
                        "generator is not a permutation of degree " + std::to_string(degree));
    }
    FiniteGroup group;
    group.degree_ = degree;
    group.generators_ = std::move(generators);
    group.elements_.push_back(identity_permutation(degree));
    group.words_.push_back({0, 0});
    group.lookup_.emplace(group.elements_.front(), 0);

    // Breadth-first by word length; each new layer is appended in
    // lexicographic order so the numbering does not depend on generator order.
    std::vector<std::size_t> layer{0};
    while (!layer.empty()) {
        std::map<Permutation, Word> fresh;
        for (auto h : layer)
            for (std::size_t k = 0; k < group.generators_.size(); ++k) {
                auto next = compose(group.generators_[k], group.elements_[h]);
                if (group.lookup_.contains(next) || fresh.contains(next)) continue;
                fresh.emplace(std::move(next), Word{k, h});
            }
        if (group.elements_.size() + fresh.size() > cap)
            throw Error(ErrorCode::ClosureExceedsCap,
                        "group closure exceeds cap of " + std::to_string(cap));
        layer.clear();
        for (auto& [perm, word] : fresh) {
            layer.push_back(group.elements_.size());
            group.lookup_.emplace(perm, group.elements_.size());
            group.elements_.push_back(perm);
            group.words_.push_back(word);
        }
    }
    for (const auto& g : group.generators_) group.generator_index_.push_back(group.lookup_.at(g));
    return group;
}

FiniteGroup FiniteGroup::from_closed_subset(std::size_t degree, std::vector<Permutation> elements) {
    FiniteGroup group;
    group.degree_ = degree;
    group.elements_ = std::move(elements);
    group.words_.push_back({0, 0});
    for (std::size_t i = 1; i < group.elements_.size(); ++i) {
        group.generators_.push_back(group.elements_[i]);
        group.generator_index_.push_back(i);
        group.words_.push_back({i - 1, 0});
    }
    group.build_lookup();
    return group;
}

void FiniteGroup::build_lookup() {
    lookup_.clear();
    for (std::size_t i = 0; i < elements_.size(); ++i) lookup_.emplace(elements_[i], i);
}

std::optional<std::size_t> FiniteGroup::index_of(const Permutation& p) const {
    if (auto it = lookup_.find(p); it != lookup_.end()) return it->second;
    return std::nullopt;
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const {
    return lookup_.at(compose(elements_.at(a), elements_.at(b)));
}

std::size_t FiniteGroup::inverse_of(std::size_t a) const {
    return lookup_.at(inverse(elements_.at(a)));
}

GroupAction::GroupAction(GroupPtr group, std::size_t points, std::vector<std::uint32_t> table,
                         std::vector<Permutation> generator_images)
    : group_(std::move(group)), points_(points), table_(std::move(table)),
      generator_images_(std::move(generator_images)) {
    if (generator_images_.empty())
        for (std::size_t k = 0; k < group_->generators().size(); ++k) {
            const auto s = group_->generator_element(k);
            generator_images_.emplace_back(table_.begin() + static_cast<std::ptrdiff_t>(s * points_),
                                           table_.begin() + static_cast<std::ptrdiff_t>((s + 1) * points_));
        }
}

GroupAction GroupAction::natural(GroupPtr group) {
    const auto n = group->degree();
    std::vector<std::uint32_t> table;
    table.reserve(group->size() * n);
    for (const auto& g : group->elements()) table.insert(table.end(), g.begin(), g.end());
    return GroupAction(std::move(group), n, std::move(table));
}

GroupAction GroupAction::from_generator_images(GroupPtr group, std::size_t points,
                                               const std::vector<Permutation>& generator_images) {
    if (generator_images.size() != group->generators().size())
        throw Error(ErrorCode::ShapeMismatch, "need one image array per group generator");
    for (const auto& img : generator_images)
        if (img.size() != points || !is_permutation(img))
            throw Error(ErrorCode::MalformedPermutation,
                        "generator image is not a permutation of " + std::to_string(points) +
                            " points");
    std::vector<std::uint32_t> table(group->size() * points);
    for (std::size_t x = 0; x < points; ++x) table[x] = static_cast<std::uint32_t>(x);
    for (std::size_t i = 1; i < group->size(); ++i) {
        const auto& w = group->word(i);
        const auto& img = generator_images[w.generator];
        for (std::size_t x = 0; x < points; ++x)
            table[i * points + x] = img[table[w.parent * points + x]];
    }
    return GroupAction(std::move(group), points, std::move(table), generator_images);
}

GroupAction GroupAction::from_table(GroupPtr group, std::size_t points,
                                    std::vector<std::uint32_t> table) {
    if (table.size() != group->size() * points)
        throw Error(ErrorCode::ShapeMismatch, "action table has wrong size");
    return GroupAction(std::move(group), points, std::move(table));
}

std::optional<GroupAction::Defect> GroupAction::homomorphism_defect() const {
    const auto& G = *group_;
    for (std::size_t x = 0; x < points_; ++x)
        if (image(0, x) != x) return Defect{0, 0, x};
    for (std::size_t h = 0; h < G.size(); ++h) {
        std::span<const std::uint32_t> row(table_.data() + h * points_, points_);
        if (!is_permutation(row)) return Defect{0, h, 0};
    }
    for (std::size_t k = 0; k < G.generators().size(); ++k) {
        const auto s = G.generator_element(k);
        for (std::size_t h = 0; h < G.size(); ++h) {
            const auto sh = G.multiply(s, h);
            const auto& img = generator_images_[k];
            for (std::size_t x = 0; x < points_; ++x)
                if (image(sh, x) != img[image(h, x)]) return Defect{s, h, x};
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> GroupAction::stabilizer_elements(std::size_t x) const {
    if (x >= points_) throw Error(ErrorCode::UnknownPoint, "point " + std::to_string(x));
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < group_->size(); ++g)
        if (image(g, x) == x) out.push_back(g);
    return out;
}

std::optional<std::size_t> GroupAction::transporter(std::size_t x, std::size_t y) const {
    if (x >= points_ || y >= points_) throw Error(ErrorCode::UnknownPoint, "transporter endpoint");
    for (std::size_t g = 0; g < group_->size(); ++g)
        if (image(g, x) == y) return g;
    return std::nullopt;
}

std::vector<std::size_t> GroupAction::orbit_of(std::size_t x) const {
    if (x >= points_) throw Error(ErrorCode::UnknownPoint, "point " + std::to_string(x));
    std::vector<std::size_t> orbit;
    for (std::size_t g = 0; g < group_->size(); ++g) orbit.push_back(image(g, x));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

FiniteGroup generate_group(std::size_t degree, std::vector<Permutation> generators, std::size_t cap) {
    return FiniteGroup::generate(degree, std::move(generators), cap);
}

FiniteGroup stabilizer(const GroupAction& action, std::size_t x) {
    std::vector<Permutation> elements;
    for (auto g : action.stabilizer_elements(x)) elements.push_back(action.group().element(g));
    return FiniteGroup::from_closed_subset(action.group().degree(), std::move(elements));
}

std::vector<std::vector<std::size_t>> orbits(const GroupAction& action) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> done(action.points(), false);
    for (std::size_t x = 0; x < action.points(); ++x) {
        if (done[x]) continue;
        auto orbit = action.orbit_of(x);
        for (auto y : orbit) done[y] = true;
        out.push_back(std::move(orbit));
    }
    return out;
}

Rational weighted_orbit_count(const GroupAction& action, const WeightedSet& weights) {
    if (weights.weight.size() != action.points())
        throw Error(ErrorCode::ShapeMismatch, "one weight per point required");
    Rational direct = 0;
    for (const auto& orbit : orbits(action)) {
        const auto& w = weights.weight[orbit.front()];
        for (auto y : orbit)
            if (weights.weight[y] != w)
                throw Error(ErrorCode::WeightNotOrbitConstant,
                            "points " + std::to_string(orbit.front()) + " and " + std::to_string(y) +
                                " share an orbit but carry different weights");
        direct += w;
    }
    Rational burnside = 0;
    for (std::size_t x = 0; x < action.points(); ++x)
        burnside += weights.weight[x] * static_cast<unsigned long>(action.stabilizer_elements(x).size());
    burnside /= static_cast<unsigned long>(action.group().size());
    if (burnside != direct)
        throw Error(ErrorCode::InternalError, "weighted orbit count disagrees: " + to_string(direct) +
                                                  " vs " + to_string(burnside));
    return direct;
}

}  // namespace orbimorse
