#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcmod/bloch.hpp"
#include "pcmod/dynamics.hpp"
#include "pcmod/isolator.hpp"
#include "pcmod/planner.hpp"
#include "pcmod/transfer.hpp"

namespace pcmod::cli {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, shortest "%g"-style form.
std::string format_double(double x);

/// Header: time,omega_t_over_pi,re_a1,im_a1,re_a2,im_a2,u,v,w,p2
std::string trajectory_csv(const CouplerParams& params, const std::vector<TrajectorySample>& samples);

/// Header: ratio,phi,feasible
std::string feasibility_csv(const FeasibilityMap& map);

/// Header: ratio,phi_c. `n` points over ratio in [0, 1].
std::string boundary_csv(int n);

/// Header: omega_t1_over_pi,omega_t2_over_pi,p2
std::string transfer_map_csv(const TransferMap& map);

/// Header: dtheta,offset,forward,backward,contrast_db
std::string contrast_csv(const ContrastSweep& sweep);

/// Two orthographic projections (u-w and v-w) of a Bloch path over the unit
/// circle, poles marked; `markers` are drawn as dots.
std::string bloch_svg(const std::vector<BlochVector>& path, const std::vector<BlochVector>& markers,
                      const std::string& title);

nlohmann::json protocol_json(const CouplerParams& params, const Protocol& protocol);

/// Inverse of protocol_json's "segments" array (durations in time units).
Protocol protocol_from_json(const nlohmann::json& segments);

/// Serialized JSON with a trailing newline.
std::string dump(const nlohmann::json& doc);

/// Creates parent directories as needed; throws IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace pcmod::cli
