#include "trafficstl/error.hpp"

#include <fmt/format.h>

namespace trafficstl {

DomainError::DomainError(double t_, double lo_, double hi_)
    : Error(fmt::format("time {} outside signal domain [{}, {}]", t_, lo_, hi_)),
      t(t_), lo(lo_), hi(hi_) {}

ParseError::ParseError(const std::string& what, std::size_t position_)
    : Error(fmt::format("syntax error at position {}: {}", position_, what)),
      position(position_) {}

MissingChannelError::MissingChannelError(const std::string& channel_)
    : Error(fmt::format("trace has no channel '{}'", channel_)), channel(channel_) {}

CollisionError::CollisionError(double time_, const std::string& follower_,
                               const std::string& leader_, double gap)
    : Error(fmt::format("collision at t={:.3f}s: vehicle '{}' behind '{}' with gap {:.4f} m",
                        time_, follower_, leader_, gap)),
      time(time_), follower(follower_), leader(leader_) {}

ConfigError::ConfigError(const std::string& what, std::size_t line_)
    : Error(line_ > 0 ? fmt::format("config line {}: {}", line_, what) : what), line(line_) {}

CsvError::CsvError(const std::string& file_, std::size_t line_, const std::string& what)
    : Error(fmt::format("{}:{}: {}", file_, line_, what)), file(file_), line(line_) {}

}  // namespace trafficstl
