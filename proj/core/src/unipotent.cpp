#include "shuffle_lab/unipotent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "shuffle_lab/arith.hpp"

namespace shuffle_lab {

Residue::Residue(std::uint64_t value, std::uint64_t modulus) : value_(0), modulus_(modulus) {
    if (modulus == 0) throw std::invalid_argument("Residue: modulus must be positive");
    value_ = value % modulus;
}

namespace {

void require_same_ring(std::uint64_t a, std::uint64_t b) {
    if (a != b) throw std::invalid_argument("residues with different moduli");
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<UInt128>(a) * b % m);
}

std::uint64_t require_prime_power(std::uint64_t q) {
    auto pp = as_prime_power(q);
    if (!pp) throw std::invalid_argument("modulus " + std::to_string(q) + " is not a prime power");
    return pp->prime;
}

}  // namespace

Residue operator+(Residue a, Residue b) {
    require_same_ring(a.modulus_, b.modulus_);
    return Residue((a.value_ + b.value_) % a.modulus_, a.modulus_);
}

Residue operator-(Residue a, Residue b) {
    require_same_ring(a.modulus_, b.modulus_);
    return Residue((a.value_ + a.modulus_ - b.value_) % a.modulus_, a.modulus_);
}

Residue operator*(Residue a, Residue b) {
    require_same_ring(a.modulus_, b.modulus_);
    return Residue(mulmod(a.value_, b.value_, a.modulus_), a.modulus_);
}

// ---------------------------------------------------------------------------
// UniMatrix

UniMatrix::UniMatrix(std::size_t dim, std::uint64_t modulus)
    : dim_(dim), modulus_(modulus), upper_(dim * (dim - 1) / 2, 0) {
    if (dim < 2) throw std::invalid_argument("UniMatrix: degree must be at least 1");
    if (modulus < 2 || modulus > (std::uint64_t{1} << 31)) {
        throw std::invalid_argument("UniMatrix: modulus must lie in [2, 2^31]");
    }
}

UniMatrix UniMatrix::identity(std::size_t degree, std::uint64_t modulus) { return UniMatrix(degree + 1, modulus); }

UniMatrix UniMatrix::elementary(std::size_t degree, std::uint64_t modulus, std::size_t i, std::size_t j,
                                std::uint64_t c) {
    UniMatrix m = identity(degree, modulus);
    m.set(i, j, c);
    return m;
}

UniMatrix UniMatrix::superdiagonal(std::size_t degree, std::uint64_t modulus) {
    UniMatrix m = identity(degree, modulus);
    for (std::size_t i = 0; i < degree; ++i) m.set(i, i + 1, 1);
    return m;
}

UniMatrix UniMatrix::random(std::size_t degree, std::uint64_t modulus, std::mt19937_64& rng) {
    UniMatrix m = identity(degree, modulus);
    std::uniform_int_distribution<std::uint64_t> dist(0, modulus - 1);
    for (auto& e : m.upper_) e = dist(rng);
    return m;
}

std::uint64_t UniMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) throw std::out_of_range("UniMatrix::at");
    if (i == j) return 1 % modulus_;
    if (i > j) return 0;
    return upper_[offset(i, j)];
}

void UniMatrix::set(std::size_t i, std::size_t j, std::uint64_t value) {
    if (i >= j || j >= dim_) throw std::out_of_range("UniMatrix::set: need i < j < dim");
    upper_[offset(i, j)] = value % modulus_;
}

bool UniMatrix::is_identity() const noexcept {
    return std::all_of(upper_.begin(), upper_.end(), [](std::uint64_t x) { return x == 0; });
}

std::string UniMatrix::render() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < dim_; ++i) {
        out << "[";
        for (std::size_t j = 0; j < dim_; ++j) out << (j ? " " : "") << at(i, j);
        out << "]";
        if (i + 1 < dim_) out << "\n";
    }
    return out.str();
}

UniMatrix uni_mul(const UniMatrix& a, const UniMatrix& b) {
    if (a.dim_ != b.dim_ || a.modulus_ != b.modulus_) {
        throw std::invalid_argument("uni_mul: size or modulus mismatch");
    }
    UniMatrix c(a.dim_, a.modulus_);
    const std::size_t n = a.dim_;
    const std::uint64_t q = a.modulus_;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::uint64_t acc = a.upper_[a.offset(i, j)] + b.upper_[b.offset(i, j)];
            for (std::size_t l = i + 1; l < j; ++l) {
                acc = (acc + a.upper_[a.offset(i, l)] * b.upper_[b.offset(l, j)]) % q;
            }
            c.upper_[c.offset(i, j)] = acc % q;
        }
    }
    return c;
}

UniMatrix uni_inv(const UniMatrix& a) {
    // Solve A X = I column by column from the bottom: X_ij = -sum_{l>i} A_il X_lj.
    UniMatrix x(a.dim_, a.modulus_);
    const std::size_t n = a.dim_;
    const std::uint64_t q = a.modulus_;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = j; i-- > 0;) {
            std::uint64_t acc = a.upper_[a.offset(i, j)];
            for (std::size_t l = i + 1; l < j; ++l) {
                acc = (acc + a.upper_[a.offset(i, l)] * x.upper_[x.offset(l, j)]) % q;
            }
            x.upper_[x.offset(i, j)] = (q - acc % q) % q;
        }
    }
    return x;
}

UniMatrix uni_pow(const UniMatrix& a, std::uint64_t e) {
    UniMatrix result = UniMatrix::identity(a.degree(), a.modulus());
    UniMatrix base = a;
    while (e > 0) {
        if (e & 1) result = uni_mul(result, base);
        e >>= 1;
        if (e) base = uni_mul(base, base);
    }
    return result;
}

UniMatrix commutator(const UniMatrix& g, const UniMatrix& h) {
    return uni_mul(uni_mul(uni_inv(g), uni_inv(h)), uni_mul(g, h));
}

std::uint64_t element_order(const UniMatrix& a) {
    const std::uint64_t p = require_prime_power(a.modulus());
    std::uint64_t order = 1;
    UniMatrix x = a;
    while (!x.is_identity()) {
        x = uni_pow(x, p);
        order *= p;
    }
    return order;
}

std::uint64_t group_exponent_formula(std::size_t s, std::uint64_t q) {
    if (s == 0) throw std::invalid_argument("group_exponent_formula: s must be positive");
    const std::uint64_t p = require_prime_power(q);
    return q * ipow(p, floor_log(s, p));
}

std::vector<UniMatrix> standard_generators(std::size_t degree, std::uint64_t modulus) {
    std::vector<UniMatrix> gens;
    for (std::size_t i = 0; i < degree; ++i) gens.push_back(UniMatrix::elementary(degree, modulus, i, i + 1));
    return gens;
}

std::uint64_t unitriangular_order(std::size_t s, std::uint64_t q) noexcept {
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < s * (s + 1) / 2; ++i) {
        if (__builtin_mul_overflow(order, q, &order)) return 0;
    }
    return order;
}

// ---------------------------------------------------------------------------
// Codec and finite groups

MatrixCodec::MatrixCodec(std::size_t degree, std::uint64_t modulus)
    : degree_(degree), modulus_(modulus), bits_(static_cast<unsigned>(std::bit_width(modulus - 1))),
      entries_(degree * (degree + 1) / 2) {
    if (degree == 0 || modulus < 2) throw std::invalid_argument("MatrixCodec: bad degree or modulus");
    if (bits_ * entries_ > 128) {
        throw std::invalid_argument("MatrixCodec: U_" + std::to_string(degree) + "(Z/" + std::to_string(modulus) +
                                    ") elements do not fit a 128-bit key");
    }
}

MatrixCodec::Key MatrixCodec::encode(const UniMatrix& m) const {
    if (m.degree() != degree_ || m.modulus() != modulus_) {
        throw std::invalid_argument("MatrixCodec: matrix has wrong degree or modulus");
    }
    Key key = 0;
    for (std::uint64_t e : m.upper_entries()) key = (key << bits_) | e;
    return key;
}

UniMatrix MatrixCodec::decode(Key key) const {
    UniMatrix m = UniMatrix::identity(degree_, modulus_);
    const Key mask = (Key{1} << bits_) - 1;
    std::vector<std::uint64_t> values(entries_);
    for (std::size_t k = entries_; k-- > 0;) {
        values[k] = static_cast<std::uint64_t>(key & mask);
        key >>= bits_;
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i <= degree_; ++i) {
        for (std::size_t j = i + 1; j <= degree_; ++j) m.set(i, j, values[k++]);
    }
    return m;
}

bool FiniteGroupSet::contains(const UniMatrix& m) const {
    if (m.degree() != degree() || m.modulus() != modulus()) return false;
    return members_.count(codec_.encode(m)) != 0;
}

std::vector<UniMatrix> FiniteGroupSet::elements() const {
    std::vector<UniMatrix> out;
    out.reserve(elements_.size());
    for (Key k : elements_) out.push_back(codec_.decode(k));
    return out;
}

bool FiniteGroupSet::same_elements(const FiniteGroupSet& other) const {
    if (degree() != other.degree() || modulus() != other.modulus() || order() != other.order()) return false;
    return std::all_of(elements_.begin(), elements_.end(), [&](Key k) { return other.members_.count(k) != 0; });
}

GroupBuilder::GroupBuilder(std::size_t degree, std::uint64_t modulus, std::size_t cap)
    : group_(degree, modulus), cap_(cap) {
    insert(group_.codec_.encode(UniMatrix::identity(degree, modulus)));
}

void GroupBuilder::insert(MatrixCodec::Key key) {
    if (group_.elements_.size() >= cap_) {
        throw CapExceeded("group closure exceeded the enumeration cap of " + std::to_string(cap_) + " elements");
    }
    group_.members_.insert(key);
    group_.elements_.push_back(key);
}

bool GroupBuilder::add_generator(const UniMatrix& g) {
    if (g.degree() != group_.degree() || g.modulus() != group_.modulus()) {
        throw std::invalid_argument("generator has wrong degree or modulus");
    }
    if (group_.contains(g)) return false;
    group_.generators_.push_back(g);
    const auto& codec = group_.codec_;
    const std::size_t old_order = group_.elements_.size();
    // Old elements are already closed under the old generators; only the
    // new generator needs applying to them.
    for (std::size_t i = 0; i < old_order; ++i) {
        const auto key = codec.encode(uni_mul(codec.decode(group_.elements_[i]), g));
        if (!group_.members_.count(key)) insert(key);
    }
    for (std::size_t i = old_order; i < group_.elements_.size(); ++i) {
        const UniMatrix e = codec.decode(group_.elements_[i]);
        for (const auto& h : group_.generators_) {
            const auto key = codec.encode(uni_mul(e, h));
            if (!group_.members_.count(key)) insert(key);
        }
    }
    return true;
}

void GroupBuilder::normalize_under(std::span<const UniMatrix> conjugators) {
    std::vector<UniMatrix> inverses;
    for (const auto& t : conjugators) inverses.push_back(uni_inv(t));
    // The generator list grows while we scan it.
    for (std::size_t i = 0; i < group_.generators_.size(); ++i) {
        for (std::size_t k = 0; k < conjugators.size(); ++k) {
            const UniMatrix g = group_.generators_[i];
            add_generator(uni_mul(uni_mul(inverses[k], g), conjugators[k]));
        }
    }
}

FiniteGroupSet generate_group(std::size_t degree, std::uint64_t modulus, std::span<const UniMatrix> generators,
                              std::size_t cap) {
    GroupBuilder builder(degree, modulus, cap);
    for (const auto& g : generators) builder.add_generator(g);
    return std::move(builder).build();
}

FiniteGroupSet full_unitriangular_group(std::size_t degree, std::uint64_t modulus, std::size_t cap) {
    require_prime_power(modulus);
    const std::uint64_t expected = unitriangular_order(degree, modulus);
    if (expected == 0 || expected > cap) {
        throw CapExceeded("U_" + std::to_string(degree) + "(Z/" + std::to_string(modulus) +
                          ") exceeds the enumeration cap of " + std::to_string(cap) + " elements");
    }
    const auto gens = standard_generators(degree, modulus);
    return generate_group(degree, modulus, gens, cap);
}

std::uint64_t measured_exponent(const FiniteGroupSet& g) {
    std::uint64_t best = 1;
    for (auto key : g.keys()) best = std::max(best, element_order(g.codec().decode(key)));
    return best;
}

bool is_normal_in(const FiniteGroupSet& n, const FiniteGroupSet& g) {
    for (const auto& t : g.generators()) {
        const UniMatrix t_inv = uni_inv(t);
        for (const auto& h : n.generators()) {
            if (!n.contains(uni_mul(uni_mul(t_inv, h), t))) return false;
        }
    }
    return true;
}

std::vector<FiniteGroupSet> lower_p_central_series(const FiniteGroupSet& g, std::uint64_t p, std::size_t max_n,
                                                   std::size_t cap) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (!is_power_of(g.order(), p)) {
        throw std::invalid_argument("lower_p_central_series: group order " + std::to_string(g.order()) +
                                    " is not a power of " + std::to_string(p));
    }
    if (max_n == 0) throw std::invalid_argument("lower_p_central_series: max_n must be positive");
    std::vector<FiniteGroupSet> layers{g};
    const auto& outer = g.generators();
    while (layers.size() < max_n) {
        const FiniteGroupSet& prev = layers.back();
        GroupBuilder builder(g.degree(), g.modulus(), cap);
        for (const auto& x : prev.generators()) {
            builder.add_generator(uni_pow(x, p));
            for (const auto& t : outer) builder.add_generator(commutator(x, t));
        }
        builder.normalize_under(outer);
        FiniteGroupSet next = std::move(builder).build();
        if (!is_normal_in(next, g)) throw std::logic_error("lower_p_central_series: layer is not normal");
        layers.push_back(std::move(next));
    }
    return layers;
}

// ---------------------------------------------------------------------------
// Quotients

CosetGroup quotient_mod(const FiniteGroupSet& g, const FiniteGroupSet& n) {
    if (g.degree() != n.degree() || g.modulus() != n.modulus()) {
        throw std::invalid_argument("quotient_mod: groups live in different matrix groups");
    }
    for (auto key : n.keys()) {
        if (!g.contains(n.codec().decode(key))) throw std::invalid_argument("quotient_mod: N is not a subgroup of G");
    }
    if (!is_normal_in(n, g)) throw std::invalid_argument("quotient_mod: N is not normal in G");

    CosetGroup q;
    q.codec_ = g.codec();
    q.generators_ = g.generators();
    const auto n_elements = n.elements();
    for (auto key : g.keys()) {
        if (q.coset_index_.count(key)) continue;
        const auto idx = static_cast<std::uint32_t>(q.representatives_.size());
        const UniMatrix rep = g.codec().decode(key);
        q.representatives_.push_back(rep);
        for (const auto& h : n_elements) q.coset_index_.emplace(g.codec().encode(uni_mul(rep, h)), idx);
    }
    return q;
}

std::size_t CosetGroup::coset_of(const UniMatrix& g) const {
    auto it = coset_index_.find(codec_.encode(g));
    if (it == coset_index_.end()) throw std::invalid_argument("CosetGroup::coset_of: element not in G");
    return it->second;
}

std::size_t CosetGroup::multiply(std::size_t i, std::size_t j) const {
    return coset_of(uni_mul(representatives_.at(i), representatives_.at(j)));
}

std::uint64_t CosetGroup::element_order(std::size_t i) const {
    std::uint64_t order = 1;
    std::size_t x = i;
    while (x != identity()) {
        x = multiply(x, i);
        ++order;
    }
    return order;
}

std::uint64_t CosetGroup::exponent() const {
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < order(); ++i) e = std::lcm(e, element_order(i));
    return e;
}

bool CosetGroup::is_abelian() const {
    for (std::size_t a = 0; a < generators_.size(); ++a) {
        for (std::size_t b = a + 1; b < generators_.size(); ++b) {
            if (coset_of(uni_mul(generators_[a], generators_[b])) !=
                coset_of(uni_mul(generators_[b], generators_[a]))) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<std::size_t>> CosetGroup::multiplication_table() const {
    std::vector<std::vector<std::size_t>> table(order(), std::vector<std::size_t>(order()));
    for (std::size_t i = 0; i < order(); ++i) {
        for (std::size_t j = 0; j < order(); ++j) table[i][j] = multiply(i, j);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Verifications

ExponentReport verify_exponent(std::size_t s, std::uint64_t q, std::size_t sample, std::uint64_t seed) {
    ExponentReport r;
    r.s = s;
    r.q = q;
    r.seed = seed;
    r.formula = group_exponent_formula(s, q);
    r.witness_order = element_order(UniMatrix::superdiagonal(s, q));
    std::mt19937_64 rng(seed);
    bool divides = true;
    for (std::size_t i = 0; i < sample; ++i) {
        const std::uint64_t o = element_order(UniMatrix::random(s, q, rng));
        r.max_sampled_order = std::max(r.max_sampled_order, o);
        if (r.formula % o != 0) divides = false;
    }
    r.samples = sample;
    r.pass = divides && r.witness_order == r.formula;
    return r;
}

ExponentReport verify_exponent_exhaustive(std::size_t s, std::uint64_t q, std::size_t cap) {
    ExponentReport r;
    r.s = s;
    r.q = q;
    r.formula = group_exponent_formula(s, q);
    r.witness_order = element_order(UniMatrix::superdiagonal(s, q));
    const auto group = full_unitriangular_group(s, q, cap);
    bool divides = true;
    for (auto key : group.keys()) {
        const std::uint64_t o = element_order(group.codec().decode(key));
        r.max_sampled_order = std::max(r.max_sampled_order, o);
        if (r.formula % o != 0) divides = false;
    }
    r.samples = group.order();
    r.exhaustive = true;
    r.pass = divides && r.witness_order == r.formula && r.max_sampled_order == r.formula;
    return r;
}

FiltrationReport verify_filtration_lemma(std::size_t n, std::size_t s, std::uint64_t p, std::size_t cap) {
    if (n < 2 || s < 1 || s > n) throw std::invalid_argument("verify_filtration_lemma: need n >= 2 and 1 <= s <= n");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    FiltrationReport r;
    r.n = n;
    r.s = s;
    r.p = p;
    r.modulus = ipow(p, static_cast<unsigned>(n - s + 1));
    const auto group = full_unitriangular_group(s, r.modulus, cap);
    r.order = group.order();

    const auto layers = lower_p_central_series(group, p, n + 1, cap);
    for (const auto& layer : layers) r.layers.push_back(layer.order());

    r.layers_normal = true;
    r.quotients_elementary = true;
    for (std::size_t k = 0; k + 1 < layers.size(); ++k) {
        const auto& upper = layers[k];
        const auto& lower = layers[k + 1];
        if (!is_normal_in(upper, group)) r.layers_normal = false;
        for (auto key : lower.keys()) {
            if (!upper.contains(lower.codec().decode(key))) r.layers_normal = false;
        }
        for (auto key : upper.keys()) {
            if (!lower.contains(uni_pow(upper.codec().decode(key), p))) r.quotients_elementary = false;
        }
    }

    const FiniteGroupSet& top = layers[n - 1];
    const std::uint64_t step = ipow(p, static_cast<unsigned>(n - s));
    bool expected_members = top.order() == p;
    for (std::uint64_t c = 0; c < p && expected_members; ++c) {
        if (!top.contains(UniMatrix::elementary(s, r.modulus, 0, s, c * step))) expected_members = false;
    }
    r.lemma_a = expected_members;

    r.lemma_b = true;
    const auto group_elements = group.keys();
    for (auto zk : top.keys()) {
        const UniMatrix z = top.codec().decode(zk);
        for (auto gk : group_elements) {
            const UniMatrix g = group.codec().decode(gk);
            if (!(uni_mul(z, g) == uni_mul(g, z))) {
                r.lemma_b = false;
                break;
            }
        }
        if (!r.lemma_b) break;
    }

    r.lemma_c = layers[n].is_trivial();
    r.exponent_formula = group_exponent_formula(s, r.modulus);
    r.exponent_measured = measured_exponent(group);
    return r;
}

}  // namespace shuffle_lab
