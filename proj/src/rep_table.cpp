#include "polyform/rep_table.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace polyform {

namespace {

using u64 = std::uint64_t;

constexpr char kMagic[4] = {'P', 'F', 'T', '1'};
constexpr std::uint32_t kFormatVersion = 1;

i64 words_for(i64 bound) { return bound / 64 + 1; }

// dst |= src << shift, over equal-length word buffers.
void or_shifted(std::vector<u64>& dst, const std::vector<u64>& src, i64 shift) {
  const std::size_t wordoff = static_cast<std::size_t>(shift / 64);
  const unsigned bitoff = static_cast<unsigned>(shift % 64);
  const std::size_t nw = dst.size();
  if (bitoff == 0) {
    for (std::size_t i = wordoff; i < nw; ++i) dst[i] |= src[i - wordoff];
  } else {
    for (std::size_t i = nw; i-- > wordoff;) {
      u64 w = src[i - wordoff] << bitoff;
      if (i - wordoff > 0) w |= src[i - wordoff - 1] >> (64 - bitoff);
      dst[i] |= w;
    }
  }
}

void fold_values(std::vector<u64>& bits, const std::vector<i64>& values) {
  std::vector<u64> base = bits;
  for (i64 v : values) {
    if (v == 0) continue;
    or_shifted(bits, base, v);
  }
}

u64 fnv1a(const std::string& bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename T>
void put_le(std::string& out, T value) {
  auto v = static_cast<std::uint64_t>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size())
    throw std::runtime_error("RepTable::deserialize: truncated input");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= std::uint64_t(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += sizeof(T);
  return static_cast<T>(v);
}

}  // namespace

i64 MGonalForm::coeff_sum() const {
  i64 s = 0;
  for (i64 a : coeffs) s += a;
  return s;
}

std::string MGonalForm::to_string() const {
  std::ostringstream os;
  os << "m=" << m << " [";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) os << ",";
    os << coeffs[i];
  }
  os << "]";
  return os.str();
}

void MGonalForm::validate() const {
  if (m < 3) throw std::invalid_argument("MGonalForm: m must be >= 3");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] < 1)
      throw std::invalid_argument("MGonalForm: coefficients must be positive");
    if (i > 0 && coeffs[i] < coeffs[i - 1])
      throw std::invalid_argument("MGonalForm: coefficients must be non-decreasing");
  }
}

RepTable RepTable::build(const MGonalForm& form, i64 bound) {
  form.validate();
  if (bound < 0) throw std::invalid_argument("RepTable: bound must be >= 0");
  RepTable t;
  t.form_.m = form.m;
  t.bound_ = bound;
  t.words_.assign(words_for(bound), 0);
  t.words_[0] = 1;  // the all-zero assignment
  for (i64 a : form.coeffs) t.fold_coefficient(a);
  return t;
}

void RepTable::fold_coefficient(i64 a) {
  if (!form_.coeffs.empty() && a < form_.coeffs.back())
    throw std::invalid_argument("RepTable: coefficient breaks ordering");
  if (a < 1) throw std::invalid_argument("RepTable: coefficient must be positive");
  std::vector<i64> scaled;
  for (i64 v : enumerate_values(form_.m, bound_ / a)) scaled.push_back(a * v);
  fold_values(words_, scaled);
  form_.coeffs.push_back(a);
}

RepTable RepTable::extended(i64 a) const {
  RepTable child = *this;
  child.fold_coefficient(a);
  return child;
}

bool RepTable::test(i64 n) const {
  if (n < 0 || n > bound_) return false;
  return (words_[n / 64] >> (n % 64)) & 1;
}

TruantResult RepTable::truant() const {
  TruantResult r;
  r.witness_bound = bound_;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    u64 missing = ~words_[w];
    if (w == 0) missing &= ~u64(1);  // 0 is always represented
    while (missing) {
      i64 n = i64(w) * 64 + std::countr_zero(missing);
      if (n > bound_) return r;
      r.truant = n;
      return r;
    }
  }
  return r;
}

bool RepTable::represents_all_up_to(i64 upto) const {
  auto t = truant();
  return t.universal() || *t.truant > upto;
}

void RepTable::serialize(std::ostream& os) const {
  std::string payload;
  put_le(payload, kFormatVersion);
  put_le(payload, form_.m);
  put_le(payload, bound_);
  put_le(payload, static_cast<u64>(form_.coeffs.size()));
  for (i64 a : form_.coeffs) put_le(payload, a);
  put_le(payload, static_cast<u64>(words_.size()));
  for (u64 w : words_) put_le(payload, w);
  os.write(kMagic, 4);
  os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  std::string check;
  put_le(check, fnv1a(payload));
  os.write(check.data(), 8);
}

RepTable RepTable::deserialize(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("RepTable::deserialize: bad magic");
  std::string rest((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());
  if (rest.size() < 8)
    throw std::runtime_error("RepTable::deserialize: truncated input");
  std::string payload = rest.substr(0, rest.size() - 8);
  std::size_t pos = rest.size() - 8;
  if (get_le<u64>(rest, pos) != fnv1a(payload))
    throw std::runtime_error("RepTable::deserialize: checksum mismatch");
  pos = 0;
  if (get_le<std::uint32_t>(payload, pos) != kFormatVersion)
    throw std::runtime_error("RepTable::deserialize: unsupported version");
  RepTable t;
  t.form_.m = get_le<i64>(payload, pos);
  t.bound_ = get_le<i64>(payload, pos);
  u64 nc = get_le<u64>(payload, pos);
  for (u64 i = 0; i < nc; ++i) t.form_.coeffs.push_back(get_le<i64>(payload, pos));
  u64 nw = get_le<u64>(payload, pos);
  for (u64 i = 0; i < nw; ++i) t.words_.push_back(get_le<u64>(payload, pos));
  t.form_.validate();
  if (t.bound_ < 0 || static_cast<i64>(t.words_.size()) != words_for(t.bound_))
    throw std::runtime_error("RepTable::deserialize: inconsistent sizes");
  return t;
}

Decomposition decompose(const MGonalForm& form, i64 n, i64 search_radius) {
  form.validate();
  if (n < 0) throw std::invalid_argument("decompose: n must be >= 0");
  const std::size_t nvars = form.coeffs.size();
  Decomposition out;
  if (nvars == 0) {
    out.status = n == 0 ? DecomposeStatus::found : DecomposeStatus::absent;
    return out;
  }

  // Per-variable candidate values (index, scaled value) in 0,1,-1,2,-2,...
  // order, plus whether the radius provably covers every value <= n.
  bool covered = true;
  std::vector<std::vector<std::pair<i64, i64>>> candidates(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    const i64 a = form.coeffs[i];
    const i64 per_var = n / a;
    bool pos_done = false, neg_done = false;
    for (i64 x = 0; x <= search_radius && !(pos_done && neg_done); ++x) {
      for (i64 sx : {x, -x}) {
        if (sx == 0 && x != 0) continue;
        bool& done = sx >= 0 ? pos_done : neg_done;
        if (done) continue;
        i64 v = eval_polygonal(form.m, sx);
        if (v > per_var) {
          done = true;
          continue;
        }
        candidates[i].emplace_back(sx, a * v);
      }
    }
    if (!pos_done || !neg_done) covered = false;
  }

  // Prefix representability tables over the candidate values make the
  // backward witness walk linear in the rank.
  std::vector<std::vector<u64>> prefix(nvars + 1);
  prefix[0].assign(static_cast<std::size_t>(words_for(n)), 0);
  prefix[0][0] = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    prefix[i + 1] = prefix[i];
    std::vector<i64> vals;
    for (auto& [x, v] : candidates[i]) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    fold_values(prefix[i + 1], vals);
  }

  auto bit = [&](const std::vector<u64>& words, i64 k) {
    return k >= 0 && k <= n && ((words[k / 64] >> (k % 64)) & 1);
  };

  if (!bit(prefix[nvars], n)) {
    out.status = covered ? DecomposeStatus::absent : DecomposeStatus::inconclusive;
    return out;
  }
  std::vector<i64> witness(nvars, 0);
  i64 rem = n;
  for (std::size_t i = nvars; i-- > 0;) {
    for (auto& [x, v] : candidates[i]) {
      if (bit(prefix[i], rem - v)) {
        witness[i] = x;
        rem -= v;
        break;
      }
    }
  }
  out.status = DecomposeStatus::found;
  out.witness = std::move(witness);
  return out;
}

}  // namespace polyform
