//! Built-in requirement matrix and texts.

use super::{Demand, ModelRow, QualityModel, SubCharacteristic, SubCharacteristicId};

const N: Demand = Demand::NoRequirement;
const M: Demand = Demand::Minimal;
const F: Demand = Demand::Full;

struct RowSpec {
    id: SubCharacteristicId,
    minimal: Option<&'static str>,
    full: &'static str,
    reasoning: &'static str,
    remediation: &'static str,
    demands: [Demand; 5],
}

const ROWS: [RowSpec; 25] = {
    use SubCharacteristicId::*;
    [
        RowSpec {
            id: Accuracy,
            minimal: Some("The ML system outperforms a simple baseline"),
            full: "The ML system outperforms a baseline and its input data are validated",
            reasoning: "Beating a baseline justifies building the system; validated inputs keep broken versions out of production.",
            remediation: "Benchmark the system against a simple baseline and add automated validation of its input data.",
            demands: [M, M, F, F, F],
        },
        RowSpec {
            id: Effectiveness,
            minimal: Some("Effectiveness is verified with an A/B experiment"),
            full: "Long-term effectiveness is verified by repeating the AB test in 6 months",
            reasoning: "Controlled experiments are the dependable way to measure business effect.",
            remediation: "Run an A/B experiment against the current solution and schedule a repeat within six months.",
            demands: [N, N, M, M, F],
        },
        RowSpec {
            id: Responsiveness,
            minimal: None,
            full: "Latency and throughput requirements are met",
            reasoning: "High latency or low throughput removes the business impact of predictions.",
            remediation: "Agree latency and throughput targets with consumers and bring the serving path within them.",
            demands: [F, F, F, F, F],
        },
        RowSpec {
            id: Usability,
            minimal: None,
            full: "System is deployed in a serving system",
            reasoning: "A system only has value when its intended users can actually call it.",
            remediation: "Deploy the system behind the shared serving platform.",
            demands: [N, N, F, F, F],
        },
        RowSpec {
            id: CostEffectiveness,
            minimal: None,
            full: "Revenue from the system is greater than its training and inference costs",
            reasoning: "A system that costs more to run than it returns should not stay deployed.",
            remediation: "Measure attributable revenue and reduce training and inference spend until it is covered.",
            demands: [N, N, N, N, F],
        },
        RowSpec {
            id: Efficiency,
            minimal: Some("Basic operations are automated"),
            full: "Resources for training and inference are optimized",
            reasoning: "Efficient systems reach their objective with the fewest resources.",
            remediation: "Automate routine operations and profile training and inference to cut resource usage.",
            demands: [N, N, N, M, F],
        },
        RowSpec {
            id: Availability,
            minimal: None,
            full: "The deployed service meets its SLAs",
            reasoning: "An unavailable system cannot serve its purpose.",
            remediation: "Define service level agreements and fix the causes of missed availability targets.",
            demands: [F, F, F, F, F],
        },
        RowSpec {
            id: Resilience,
            minimal: Some("Up to 30% failed ML pipelines per quarter"),
            full: "At most 10% failed ML pipelines per quarter",
            reasoning: "Pipelines that fail often leave stale models serving predictions.",
            remediation: "Investigate recurring pipeline failures and add retries and alerting to the pipeline.",
            demands: [N, N, M, M, F],
        },
        RowSpec {
            id: Adaptability,
            minimal: Some("The system is partially adaptable"),
            full: "The system is adaptable (e.g. retrained frequently)",
            reasoning: "The environment changes; systems that do not follow it lose impact.",
            remediation: "Introduce a scheduled retraining pipeline.",
            demands: [N, N, M, F, F],
        },
        RowSpec {
            id: Scalability,
            minimal: None,
            full: "The system is deployed and can scale the resources depending on the traffic",
            reasoning: "Use cases differ in traffic, and one system may serve several of them.",
            remediation: "Enable autoscaling on the serving deployment.",
            demands: [N, N, N, N, F],
        },
        RowSpec {
            id: Repeatability,
            minimal: Some("The pipeline of the ML life-cycle is partially automated"),
            full: "The pipeline repeating the ML life-cycle is fully automated",
            reasoning: "Automation lowers manual overhead and the chance of human error.",
            remediation: "Automate the remaining manual steps of the training and deployment pipeline.",
            demands: [N, N, M, F, F],
        },
        RowSpec {
            id: Monitoring,
            minimal: Some("ML performance is being monitored"),
            full: "ML performance, feature drift and metrics are monitored",
            reasoning: "Many things can fail; key indicators reveal degradation early.",
            remediation: "Add monitoring of model performance, feature drift and operational metrics.",
            demands: [N, N, M, M, F],
        },
        RowSpec {
            id: Maintainability,
            minimal: Some("Code is versioned"),
            full: "Code is versioned and Readability full requirement is met",
            reasoning: "Ease of maintenance drives downtime and iteration speed.",
            remediation: "Put all code under version control and meet the full readability requirement.",
            demands: [N, M, M, M, F],
        },
        RowSpec {
            id: Modularity,
            minimal: Some("The source code is partially modular"),
            full: "The code is fully modular, split into components of limited functionality",
            reasoning: "Modular code lets one part change without breaking another.",
            remediation: "Split the code base into components with narrow responsibilities.",
            demands: [N, M, M, M, F],
        },
        RowSpec {
            id: Testability,
            minimal: Some("Test coverage is at least 20%"),
            full: "Test coverage is at least 80%",
            reasoning: "Test coverage underpins robustness and ease of maintenance.",
            remediation: "Add unit and integration tests until coverage reaches the target.",
            demands: [N, M, M, M, F],
        },
        RowSpec {
            id: Operability,
            minimal: Some("The system is deployed on a service"),
            full: "The system can be disabled, updated and reverted",
            reasoning: "Production systems need their state changed quickly when deployments go wrong.",
            remediation: "Provide controls to disable, update and roll back the deployed system.",
            demands: [M, M, F, F, F],
        },
        RowSpec {
            id: Discoverability,
            minimal: None,
            full: "The system is deployed in an accessible registry",
            reasoning: "Systems that can be found can be audited and reused.",
            remediation: "Register the system in the shared ML registry.",
            demands: [N, N, F, F, F],
        },
        RowSpec {
            id: Readability,
            minimal: Some("Meaningful variables names"),
            full: "The code is fully modular, there is a unified code style",
            reasoning: "Readable code is easier to maintain, modify and extend.",
            remediation: "Adopt a shared code style with automated formatting and use descriptive names.",
            demands: [N, N, M, M, F],
        },
        RowSpec {
            id: Traceability,
            minimal: Some("Metadata is partially logged"),
            full: "Metadata and artifacts in the ML life-cycle are fully logged",
            reasoning: "Reproducing a production system needs the exact conditions it was built and deployed under.",
            remediation: "Log training metadata and artifacts for every run and deployment.",
            demands: [N, N, M, F, F],
        },
        RowSpec {
            id: Understandability,
            minimal: Some("The system has partial documentation"),
            full: "The system has complete documentation",
            reasoning: "Documentation earns user trust and lets contributors maintain the system.",
            remediation: "Complete the system documentation: purpose, inputs, outputs, limitations and operations.",
            demands: [M, M, F, F, F],
        },
        RowSpec {
            id: Explainability,
            minimal: None,
            full: "The system's predictions are explainable",
            reasoning: "Stakeholders trust predictions whose mechanism they can follow.",
            remediation: "Provide explanations for predictions, e.g. feature attributions.",
            demands: [N, N, N, F, F],
        },
        RowSpec {
            id: Fairness,
            minimal: None,
            full: "The system has been checked against undesired biases and none were identified",
            reasoning: "Predictions may drive irreversible decisions for customers and must not carry undesired bias.",
            remediation: "Run a bias audit across relevant groups and mitigate any bias found.",
            demands: [F, F, F, F, F],
        },
        RowSpec {
            id: Ownership,
            minimal: None,
            full: "A team is appointed for maintaining the ML system",
            reasoning: "Someone has to be accountable when the system breaks.",
            remediation: "Appoint an owning team and record it in the registry.",
            demands: [F, F, F, F, F],
        },
        RowSpec {
            id: StandardsCompliance,
            minimal: None,
            full: "Compliance standards, such as PII data handling, are met",
            reasoning: "Regulatory adherence is a precondition for long-term operation.",
            remediation: "Review the system against applicable compliance standards and close the findings.",
            demands: [F, F, F, F, F],
        },
        RowSpec {
            id: Vulnerability,
            minimal: None,
            full: "Bots are filtered out from the input data",
            reasoning: "Bot traffic adds noise and opens the system to manipulation.",
            remediation: "Filter bot traffic out of training and inference inputs.",
            demands: [F, F, F, F, F],
        },
    ]
};

pub(super) fn default_model() -> QualityModel {
    QualityModel::from_rows_unchecked(ROWS.iter().map(|r| ModelRow {
        sub: SubCharacteristic {
            id: r.id,
            parent: r.id.parent(),
            minimal_requirement: r.minimal.map(str::to_string),
            full_requirement: r.full.to_string(),
            reasoning: r.reasoning.to_string(),
        },
        demands: r.demands,
        remediation: r.remediation.to_string(),
    }))
}
