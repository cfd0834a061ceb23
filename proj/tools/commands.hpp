#pragma once

// Subcommand implementations for the kcps tool. Kept apart from main() so
// tests can drive them with in-memory streams.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <openssl/evp.h>

#include "kcps/kcps.hpp"

namespace kcps::cli {

enum class ExitCode : int { Valid = 0, Invalid = 1, UsageOrIo = 2, TooLarge = 3 };

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

enum class CompileMode { Sharp, Max };

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

/// Digest of the canonical DIMACS rendering, so comments and spacing do not matter.
inline std::string formula_digest(const CnfFormula& f) { return sha256_hex(to_dimacs(f)); }

namespace detail {

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

inline void check_stdin_use(const std::string& a, const std::string& b) {
  if (a == "-" && b == "-") throw InputError("only one input may be read from stdin");
}

template <class Fn>
int guarded(Streams io, Fn&& fn) {
  try {
    return static_cast<int>(fn());
  } catch (const OracleError& e) {
    io.err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code() == OracleErrc::TooLarge ? ExitCode::TooLarge
                                                             : ExitCode::UsageOrIo);
  } catch (const DimacsError& e) {
    io.err << "error: cnf: " << e.what() << '\n';
  } catch (const CertParseError& e) {
    io.err << "error: certificate: " << e.what() << '\n';
  } catch (const InputError& e) {
    io.err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
  }
  return static_cast<int>(ExitCode::UsageOrIo);
}

inline ExitCode report(Streams io, const Verdict& v, const char* key, const CnfFormula& f,
                       bool quiet) {
  if (v.is_valid()) {
    if (!quiet)
      io.out << "VALID " << key << '=' << v.value().str()
             << " formula_sha256=" << formula_digest(f) << '\n';
    return ExitCode::Valid;
  }
  if (!quiet)
    io.out << "INVALID reason=" << to_string(v.rejection().reason)
           << " detail=" << v.rejection().detail << '\n';
  return ExitCode::Invalid;
}

}  // namespace detail

inline int cmd_check_count(const std::string& cnf_path, const std::string& cert_path,
                           const std::optional<std::string>& expect, bool quiet, Streams io) {
  return detail::guarded(io, [&] {
    detail::check_stdin_use(cnf_path, cert_path);
    std::optional<BigCount> claimed;
    if (expect) {
      if (expect->empty() || expect->find_first_not_of("0123456789") != std::string::npos)
        throw detail::InputError("--expect needs a non-negative integer, got '" + *expect + "'");
      claimed = BigCount(*expect);
    }
    const CnfFormula f = parse_dimacs(detail::slurp(cnf_path, io.in));
    const CertifiedDnnf d = read_cert(detail::slurp(cert_path, io.in));
    return detail::report(io, check_kcps_sharp(f, d, claimed), "count", f, quiet);
  });
}

inline int cmd_check_maxsat(const std::string& cnf_path, const std::string& cert_path,
                            const std::optional<std::uint64_t>& expect, bool quiet, Streams io) {
  return detail::guarded(io, [&] {
    detail::check_stdin_use(cnf_path, cert_path);
    const CnfFormula f = parse_dimacs(detail::slurp(cnf_path, io.in));
    const CertifiedDnnf d = read_cert(detail::slurp(cert_path, io.in));
    return detail::report(io, check_kcps_max(f, d, expect), "max", f, quiet);
  });
}

inline int cmd_compile(const std::string& cnf_path, const std::string& out_path,
                       CompileOptions opts, CompileMode mode, Streams io) {
  return detail::guarded(io, [&] {
    const CnfFormula f = parse_dimacs(detail::slurp(cnf_path, io.in));
    const CertifiedDnnf d =
        mode == CompileMode::Sharp ? compile(f, opts) : compile(build_tilde(f).formula, opts);
    if (out_path == "-") {
      write_cert(io.out, d);
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw detail::InputError("cannot write '" + out_path + "'");
      write_cert(file, d);
      if (!file.flush()) throw detail::InputError("write failed for '" + out_path + "'");
    }
    return ExitCode::Valid;
  });
}

inline int cmd_oracle(const std::string& cnf_path, bool maxsat, OracleLimit limit, Streams io) {
  return detail::guarded(io, [&] {
    const CnfFormula f = parse_dimacs(detail::slurp(cnf_path, io.in));
    if (maxsat)
      io.out << oracle_maxsat(f, limit) << '\n';
    else
      io.out << oracle_count(f, limit).str() << '\n';
    return ExitCode::Valid;
  });
}

}  // namespace kcps::cli
