#include "cdd/instances.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace cdd {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  }
  return value;
}

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return Rational{num / g, den / g};
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  // Next integer token; `what` names the field for error messages.
  std::int64_t next_int(const char* what) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    ++token_;
    if (pos_ >= text_.size()) {
      throw ParseError(std::string("unexpected end of data, expected ") + what, token_);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view tok = text_.substr(start, pos_ - start);
    std::int64_t value = 0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("expected integer " + std::string(what) + ", got '" + std::string(tok) + "'",
                       token_);
    }
    return value;
  }

  bool at_end() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ >= text_.size();
  }

  std::size_t token() const { return token_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t token_ = 0;
};

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.find('-') != std::string_view::npos) {
    throw std::invalid_argument("negative rational: '" + std::string(text) + "'");
  }

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_digits(s.substr(0, slash), text);
    std::int64_t den = parse_digits(s.substr(slash + 1), text);
    return reduced(num, den);
  }
  auto dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
  }
  if (frac_part.size() > 17) throw std::invalid_argument("too many decimals: '" + std::string(text) + "'");
  std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
  std::int64_t frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  if (whole > (std::numeric_limits<std::int64_t>::max() - frac) / den) {
    throw std::invalid_argument("number out of range: '" + std::string(text) + "'");
  }
  return reduced(whole * den + frac, den);
}

std::string Rational::to_string() const {
  std::int64_t pow10 = 1;
  int digits = 0;
  while (pow10 % den != 0 && digits < 18) {
    pow10 *= 10;
    ++digits;
  }
  if (pow10 % den != 0) return std::to_string(num) + "/" + std::to_string(den);
  std::string out = std::to_string(num / den);
  if (digits == 0) return out;
  std::string frac = std::to_string((num % den) * (pow10 / den));
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  return out;
}

RawInstanceSet parse_orlib(std::string_view text) {
  Tokenizer tok(text);
  std::int64_t count = tok.next_int("instance count");
  if (count < 0) throw ParseError("instance count must be nonnegative", tok.token());

  RawInstanceSet set;
  set.entries.reserve(static_cast<std::size_t>(std::min<std::int64_t>(count, 1024)));
  for (std::int64_t k = 1; k <= count; ++k) {
    std::int64_t n = tok.next_int("job count");
    if (n <= 0) throw ParseError("job count must be positive", tok.token());
    RawInstance entry;
    entry.index = static_cast<std::size_t>(k);
    entry.jobs.reserve(static_cast<std::size_t>(std::min<std::int64_t>(n, 1 << 16)));
    for (std::int64_t i = 1; i <= n; ++i) {
      Job job;
      job.id = static_cast<JobId>(i);
      job.processing_time = tok.next_int("processing time");
      if (job.processing_time <= 0) throw ParseError("processing time must be positive", tok.token());
      job.early_penalty = tok.next_int("earliness penalty");
      if (job.early_penalty <= 0) throw ParseError("earliness penalty must be positive", tok.token());
      job.tardy_penalty = tok.next_int("tardiness penalty");
      if (job.tardy_penalty <= 0) throw ParseError("tardiness penalty must be positive", tok.token());
      entry.jobs.push_back(job);
    }
    set.entries.push_back(std::move(entry));
  }
  if (!tok.at_end()) throw ParseError("trailing data after last instance", tok.token() + 1);
  return set;
}

RawInstanceSet load_orlib(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_orlib(buf.str());
}

std::string serialize_orlib(const RawInstanceSet& set) {
  std::ostringstream out;
  out << "    " << set.entries.size() << '\n';
  for (const RawInstance& entry : set.entries) {
    out << "    " << entry.jobs.size() << '\n';
    for (const Job& job : entry.jobs) {
      out << "    " << job.processing_time << "    " << job.early_penalty << "    "
          << job.tardy_penalty << '\n';
    }
  }
  return out.str();
}

Time compute_due_date(const Rational& h, Time total_processing, int machines) {
  if (h.num <= 0 || h.den <= 0) throw std::invalid_argument("restrictive factor must be positive");
  if (total_processing < 0) throw std::invalid_argument("total processing time must be nonnegative");
  if (machines < 1) throw std::invalid_argument("machine count must be at least 1");
  __int128 numerator = static_cast<__int128>(h.num) * total_processing;
  __int128 denominator = static_cast<__int128>(h.den) * machines;
  return static_cast<Time>(numerator / denominator);  // both nonnegative: truncation is floor
}

Instance make_benchmark_instance(const RawInstance& raw, const Rational& h, int machines) {
  Time total = 0;
  for (const Job& j : raw.jobs) total += j.processing_time;
  return Instance(raw.jobs, compute_due_date(h, total, machines), machines);
}

Instance make_benchmark_instance(const RawInstanceSet& set, const BenchmarkSpec& spec) {
  if (spec.index < 1 || spec.index > set.entries.size()) {
    throw std::out_of_range("instance index " + std::to_string(spec.index) + " not in file (" +
                            std::to_string(set.entries.size()) + " entries)");
  }
  const RawInstance& raw = set.entries[spec.index - 1];
  if (spec.job_count != 0 && spec.job_count != raw.jobs.size()) {
    throw StructuralError("instance " + std::to_string(spec.index) + " has " +
                          std::to_string(raw.jobs.size()) + " jobs, expected " +
                          std::to_string(spec.job_count));
  }
  return make_benchmark_instance(raw, spec.restrictive_factor, spec.machine_count);
}

Instance generate_random_instance(std::size_t n, Rng& rng, const GenerationRanges& ranges,
                                  const Rational& h, int machines) {
  if (n == 0) throw std::invalid_argument("instance needs at least one job");
  auto check = [](const IntRange& r, std::int64_t min_lo, const char* what) {
    if (r.lo > r.hi) throw std::invalid_argument(std::string("empty ") + what + " range");
    if (r.lo < min_lo) throw std::invalid_argument(std::string(what) + " range below minimum");
  };
  check(ranges.processing, 1, "processing time");
  check(ranges.early, 0, "earliness penalty");
  check(ranges.tardy, 0, "tardiness penalty");

  std::vector<Job> jobs(n);
  Time total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    jobs[i].id = static_cast<JobId>(i + 1);
    jobs[i].processing_time = rng.between(ranges.processing.lo, ranges.processing.hi);
    jobs[i].early_penalty = rng.between(ranges.early.lo, ranges.early.hi);
    jobs[i].tardy_penalty = rng.between(ranges.tardy.lo, ranges.tardy.hi);
    total += jobs[i].processing_time;
  }
  return Instance(std::move(jobs), compute_due_date(h, total, machines), machines);
}

}  // namespace cdd
