#include "weaveq/config.hpp"

#include <numbers>

namespace weaveq::config {

namespace {
LogBase g_log_base = LogBase::bits;
int g_dense_cap = 12;
} // namespace

LogBase log_base() { return g_log_base; }
void set_log_base(LogBase base) { g_log_base = base; }

double entropy_unit() {
  return g_log_base == LogBase::bits ? 1.0 : std::numbers::ln2;
}

int dense_cap() { return g_dense_cap; }
void set_dense_cap(int cap) { g_dense_cap = cap; }

} // namespace weaveq::config
