#pragma once

#include <stagbox/cases.hpp>
#include <stagbox/newton.hpp>
#include <stagbox/verify.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace stagbox::studies {

enum class StudyKind { converge, obstacle, forchheimer };

std::string to_string(StudyKind kind);
StudyKind parse_study_kind(const std::string& name);

struct StudyConfig {
    StudyKind kind = StudyKind::converge;
    std::string output_dir = "out";
    bool dump_fields = false;

    // [grid]
    std::vector<PmGridKind> grids{PmGridKind::conforming};
    ProjectionKind projection = ProjectionKind::l2;
    int level_min = 0, level_max = 3;
    int base_cells = 5;
    std::vector<double> interface_factors{0.95};

    // [physics]
    double rho = 1.0, mu = 1.0;
    double alpha_bjs = 1.0;
    double zeta = 0.5;
    bool inertia = true;
    std::vector<double> permeabilities;
    std::vector<double> inflow_velocities;
    std::vector<double> forchheimer_coefficients;
    std::vector<double> pressure_drops;

    // [obstacle]
    Rect channel{0.0, 0.0, 1.0, 2.0};
    Rect block{0.2, 0.8, 1.0, 1.6};
    double dx = 1.0 / 20.0, dy = 1.0 / 5.0;
    std::vector<double> ramp{0.1, 0.2, 0.35, 0.5, 0.7};

    // [forchheimer]
    Rect bed{0.0, 0.0, 1.0, 0.5};
    double channel_height = 0.5;
    int nx = 20, ny = 10;

    NewtonConfig newton;

    //! Throws ConfigurationError on violated invariants.
    void validate() const;

    friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

//! Defaults of a study kind (the manufactured case, air around a block, air over a bed).
StudyConfig default_config(StudyKind kind);

//! INI text with sections [study] [grid] [physics] [obstacle] [forchheimer] [newton].
//! Unset keys keep the defaults of the study kind. Overrides are "section.key=value".
StudyConfig parse_config(std::istream& is, const std::vector<std::string>& overrides = {});
StudyConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
std::string serialize_config(const StudyConfig& config);

struct ConvergeLevel {
    ErrorRow errors;
    NewtonReport newton;
    MassBalance balance;
};

struct ConvergeResult {
    std::vector<ErrorReport> reports; // one per grid kind
    std::vector<std::vector<ConvergeLevel>> levels;
    std::string failure; // empty when every level converged
};

ConvergeResult run_converge(const StudyConfig& config);

struct ObstaclePoint {
    PmGridKind grid = PmGridKind::conforming;
    double interface_factor = 1.0;
    int level = 0;
    double permeability = 0.0;
    double inflow_velocity = 0.0;
    double reynolds = 0.0;
    double v_ref = 0.0;
    TotalVariation tv;
    int newton_iterations = 0;
    MassBalance balance;
    std::vector<double> x, vy; // interface profile
    std::string failure;
};

struct ObstacleResult {
    std::vector<ObstaclePoint> points;
    bool all_converged() const;
};

ObstacleResult run_obstacle(const StudyConfig& config);

struct ForchheimerRow {
    double pressure_drop = 0.0;
    std::vector<double> flow; // one per Forchheimer coefficient
};

struct ForchheimerResult {
    std::vector<double> coefficients;
    std::vector<ForchheimerRow> rows;
    std::string failure;
};

ForchheimerResult run_forchheimer(const StudyConfig& config);

void write_converge(const ConvergeResult& result, const StudyConfig& config, const std::filesystem::path& dir);
void write_obstacle(const ObstacleResult& result, const std::filesystem::path& dir);
void write_forchheimer(const ForchheimerResult& result, const std::filesystem::path& dir);

//! Positions and values of every unknown field, one CSV per field kind.
void write_fields(const CoupledProblem& problem, std::span<const double> x, const std::filesystem::path& dir,
                  const std::string& prefix);

} // namespace stagbox::studies
