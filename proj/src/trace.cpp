#include "recmon/trace.hpp"

#include "scan.hpp"

namespace recmon {

FinfiniteTrace FinfiniteTrace::finite(FiniteTrace events) {
  FinfiniteTrace t;
  t.prefix_ = std::move(events);
  return t;
}

FinfiniteTrace FinfiniteTrace::lasso(FiniteTrace prefix, FiniteTrace loop) {
  FinfiniteTrace t;
  t.prefix_ = std::move(prefix);
  t.loop_ = std::move(loop);
  return t;
}

namespace {

Action read_action(detail::Scanner& s) {
  size_t pos = s.pos();
  std::string w = s.try_word();
  if (!is_action_name(w)) throw SyntaxError("expected action name", pos);
  return w;
}

}  // namespace

FinfiniteTrace FinfiniteTrace::parse(const std::string& text) {
  detail::Scanner s(text);
  FiniteTrace prefix, loop;
  if (s.peek() != '(') {
    Action first = read_action(s);
    if (first == "eps") {
      s.expect_end("trace");
      return FinfiniteTrace();
    }
    prefix.push_back(first);
    while (s.try_eat('.')) prefix.push_back(read_action(s));
  }
  if (s.try_eat('(')) {
    loop.push_back(read_action(s));
    while (s.try_eat('.')) loop.push_back(read_action(s));
    s.expect(')', "to close loop");
    s.expect('^', "after loop");
    size_t wpos = s.pos();
    if (s.try_word() != "w") throw SyntaxError("expected 'w' after '^'", wpos);
  }
  s.expect_end("trace");
  return loop.empty() ? finite(std::move(prefix))
                      : lasso(std::move(prefix), std::move(loop));
}

std::string FinfiniteTrace::to_string() const {
  if (prefix_.empty() && loop_.empty()) return "eps";
  std::string out = print_trace(prefix_);
  if (prefix_.empty()) out.clear();
  if (!loop_.empty()) {
    out += '(';
    out += print_trace(loop_);
    out += ")^w";
  }
  return out;
}

FinfiniteTrace FinfiniteTrace::prepend(const FiniteTrace& s) const {
  FiniteTrace p = s;
  p.insert(p.end(), prefix_.begin(), prefix_.end());
  return loop_.empty() ? finite(std::move(p)) : lasso(std::move(p), loop_);
}

std::string print_trace(const FiniteTrace& t) {
  if (t.empty()) return "eps";
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += '.';
    out += t[i];
  }
  return out;
}

FiniteTrace parse_finite_trace(const std::string& text) {
  FinfiniteTrace t = FinfiniteTrace::parse(text);
  if (!t.is_finite()) throw SyntaxError("expected a finite trace", 0);
  return t.prefix();
}

namespace {

/* All |sigma|^len words of the given length, lexicographic in declaration
   order. */
std::vector<FiniteTrace> words_of_length(const Alphabet& sigma, size_t len) {
  std::vector<FiniteTrace> out;
  if (len == 0) {
    out.emplace_back();
    return out;
  }
  if (sigma.empty()) return out;
  std::vector<size_t> idx(len, 0);
  for (;;) {
    FiniteTrace w;
    w.reserve(len);
    for (size_t i : idx) w.push_back(sigma.at(i));
    out.push_back(std::move(w));
    size_t p = len;
    while (p > 0) {
      --p;
      if (++idx[p] < sigma.size()) break;
      idx[p] = 0;
      if (p == 0) return out;
    }
  }
}

}  // namespace

std::vector<FiniteTrace> finite_traces_upto(const Alphabet& sigma,
                                            size_t max_len) {
  std::vector<FiniteTrace> out;
  for (size_t len = 0; len <= max_len; ++len) {
    auto words = words_of_length(sigma, len);
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

void for_each_extension(const Alphabet& sigma, size_t max_size,
                        const std::function<bool(const FinfiniteTrace&)>& visit) {
  for (size_t size = 0; size <= max_size; ++size) {
    for (auto& w : words_of_length(sigma, size)) {
      if (!visit(FinfiniteTrace::finite(std::move(w)))) return;
    }
    for (size_t ulen = 0; ulen + 1 <= size; ++ulen) {
      for (auto& u : words_of_length(sigma, ulen)) {
        for (auto& v : words_of_length(sigma, size - ulen)) {
          if (!visit(FinfiniteTrace::lasso(u, std::move(v)))) return;
        }
      }
    }
  }
}

std::vector<FinfiniteTrace> bounded_universe(const Alphabet& sigma,
                                             size_t finite_len,
                                             size_t lasso_size) {
  std::vector<FinfiniteTrace> out;
  for (auto& w : finite_traces_upto(sigma, finite_len))
    out.push_back(FinfiniteTrace::finite(std::move(w)));
  for (size_t size = 1; size <= lasso_size; ++size) {
    for (size_t ulen = 0; ulen + 1 <= size; ++ulen) {
      for (auto& u : words_of_length(sigma, ulen)) {
        for (auto& v : words_of_length(sigma, size - ulen)) {
          out.push_back(FinfiniteTrace::lasso(u, std::move(v)));
        }
      }
    }
  }
  return out;
}

}  // namespace recmon
