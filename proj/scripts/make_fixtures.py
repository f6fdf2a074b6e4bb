#!/usr/bin/env python3
"""Regenerates the deterministic replay fixtures under fixtures/.

The 42-case dataset mirrors the reference confusion tables cell-for-cell:
per-case expert levels, the multi-agent triage predictions, and the
single-agent predictions (including range and not-applicable rows) are all
fixed assignments, not samples. Run from the repository root:

    python3 scripts/make_fixtures.py
"""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
CASES_DIR = ROOT / "fixtures" / "cases"
SCRIPTED_DIR = ROOT / "fixtures" / "scripted"

# (case index -> expert level, multi-agent prediction, single-agent prediction)
# single predictions: int = exact, "a or b" = range, None = not applicable.
ASSIGNMENTS = []
ASSIGNMENTS += [(1, 1, 1), (1, 1, 1), (1, 1, None)]                      # expert 1
ASSIGNMENTS += [(2, 2, 1)] + [(2, 2, "1 or 2")] * 4 + [(2, 2, 2)] * 8    # expert 2
ASSIGNMENTS += [(2, 2, 3)] * 2 + [(2, 3, None)]
ASSIGNMENTS += [(3, 2, "1 or 2")] + [(3, 2, 2)] + [(3, 3, 2)] * 2        # expert 3
ASSIGNMENTS += [(3, 3, 3)] * 5
ASSIGNMENTS += [(4, 2, 2)] + [(4, 2, 3)] + [(4, 3, 3)] * 3 + [(4, 3, None)] * 2  # expert 4
ASSIGNMENTS += [(5, 2, 2)] + [(5, 3, 2)] + [(5, 5, 3)] * 3 + [(5, 5, "3 or 4")] + [(5, 5, None)]  # expert 5

NARRATIVES = {
    1: [
        "Found unresponsive at home by family; no palpable pulse on arrival of EMS, CPR in progress for 8 minutes before return of spontaneous circulation.",
        "Sudden collapse at work with agonal breathing; bystander CPR started immediately, patient remains unconscious on arrival.",
        "Witnessed cardiac arrest in a shopping mall; two defibrillator shocks delivered on scene, now with weak carotid pulse and no spontaneous eye opening.",
    ],
    2: [
        "Crushing substernal chest pain radiating to the left arm for 45 minutes with diaphoresis and nausea; history of hypertension and smoking.",
        "Sudden right-sided weakness and slurred speech beginning 90 minutes ago; known atrial fibrillation, not anticoagulated.",
        "Severe tearing chest pain with new ST elevation on the prehospital ECG; pale, clammy, anxious.",
        "Abrupt worst-ever headache with vomiting and neck stiffness; blood pressure markedly elevated on arrival.",
    ],
    3: [
        "Progressive shortness of breath over two days with a productive cough; speaking in full sentences, oxygen saturation in the low nineties on room air.",
        "Six episodes of diarrhea with visible blood since last night, crampy abdominal pain, dizziness on standing.",
        "Worsening dyspnea on exertion with mild wheeze; known asthma, using the rescue inhaler more often than usual.",
    ],
    4: [
        "Two days of vomiting and watery diarrhea with fever measured at home above 38 degrees; tolerating small sips of fluid.",
        "Burning on urination with lower abdominal pain and a low-grade fever since yesterday; no flank pain.",
        "Gastroenteritis symptoms with fever and reduced oral intake; mildly dry mucous membranes, otherwise stable.",
    ],
    5: [
        "Runny nose, sore throat and mild cough for three days; afebrile, eating and drinking normally.",
        "Loose stools twice daily for two days without blood or fever; no recent travel or antibiotics.",
        "Small laceration on the left forearm from a kitchen knife; bleeding controlled with pressure, tetanus status current.",
        "Mild seasonal congestion and sneezing; requests a work note, vital signs unremarkable.",
    ],
}

FINDINGS = {
    1: {"chief_complaint": "cardiac arrest", "flags": ["cardiac_arrest"]},
    4: {"chief_complaint": "gastroenteritis with fever", "temperature_c": 38.6, "flags": []},
    9: {"chief_complaint": "myocardial infarction suspected", "heart_rate_bpm": 104.0,
        "systolic_bp_mmhg": 92.0, "flags": []},
    20: {"chief_complaint": "dyspnea", "spo2_percent": 92.0,
         "respiratory_rate_per_min": 24.0, "flags": []},
    22: {"chief_complaint": "diarrhea with bleeding", "flags": ["bleeding_diarrhea"]},
    30: {"chief_complaint": "urinary tract infection with abdominal pain",
         "temperature_c": 37.9, "flags": []},
    38: {"chief_complaint": "common cold", "temperature_c": 37.1, "flags": []},
}

DIAGNOSES = {
    1: ("Cardiac arrest with return of spontaneous circulation", "Admit",
        "Epinephrine 1mg IV", "Continuous ECG and arterial blood gas"),
    2: ("Acute myocardial infarction", "Transfer",
        "Aspirin 300mg PO once", "Serial troponin and 12-lead ECG"),
    3: ("Community-acquired pneumonia with hypoxia", "Admit",
        "Ceftriaxone 1g IV q12h", "Chest X-ray and blood cultures"),
    4: ("Acute gastroenteritis with dehydration", "Continue ER care",
        "Ondansetron 4mg IV once", "Basic metabolic panel"),
    5: ("Uncomplicated viral upper respiratory infection", "Discharge",
        "Ibuprofen 400mg PO q6h as needed", "None indicated"),
}

FIVE_CATEGORIES = ["primary_diagnosis", "critical_findings", "justification"]
ONE_CATEGORIES = ["disposition_decision", "immediate_action", "medication",
                  "diagnostic_test", "consultation", "monitoring"]


def case_id(i):
    return f"c{i:02d}"


def make_annotation(i, expert):
    five = {}
    for k, cat in enumerate(FIVE_CATEGORIES):
        # mostly 5s with a deterministic sprinkle of 4s and a 3
        score = 5
        if (i + k) % 11 == 0:
            score = 4
        if (i + k) % 17 == 0:
            score = 3
        five[cat] = score
    one = {}
    for k, cat in enumerate(ONE_CATEGORIES):
        score = 1.0
        if (i + k) % 13 == 0:
            score = 0.5
        if (i + k) % 19 == 0:
            score = 0.0
        one[cat] = score
    return {"ktas_level": expert, "five_point_scores": five, "one_point_scores": one}


def physician_output(i, expert):
    diagnosis, _, med, tests = DIAGNOSES[expert]
    return f"""PRIMARY DIAGNOSIS: {diagnosis}

Supporting Evidence: Presentation and vital signs for case {case_id(i)} are consistent with this diagnosis.

Differential Diagnoses:
1. Alternative diagnosis A: considered and less likely given the time course
2. Alternative diagnosis B: excluded by the available findings

Treatment Plan:
1. Medications:
   a. {med} - primary therapy (RxNorm verified)
2. Interventions/Procedures: supportive care as outlined
3. Fluid Management: isotonic fluids titrated to response
4. Pain Management: acetaminophen as needed

Diagnostic Tests:
1. {tests}: to confirm the working diagnosis

Potential Complications:
1. Deterioration: escalate monitoring and reassess immediately

Consultations:
1. On-call specialist: if the clinical course worsens

Monitoring Plan: Reassess vital signs and symptom trajectory at regular intervals.

Evidence-Based Guidelines: Standard emergency care pathways."""


def pharmacist_output(i, expert):
    _, _, med, _ = DIAGNOSES[expert]
    name = med.split()[0]
    rest = med[len(name):].strip()
    return f"""MEDICATION SAFETY REPORT

Patient Condition Summary: Case {case_id(i)} under active emergency evaluation.

Prescribed Medications Analysis:
1. {name} (RxNorm verified):
   - Dose/Route/Frequency: {rest if rest else "per protocol"}
   - Indication: primary therapy for the working diagnosis
   - Appropriateness: dose appropriate for age and renal function
   - Interactions: none significant identified
   - Contraindications: none identified
   - Administration Instructions: administer per standard protocol
   - Monitoring: observe for hypersensitivity and therapeutic response

Overall Medication Therapy Assessment:
- Drug-Disease Interactions: none identified
- High-Alert Medications: none in the current plan
- Pharmacokinetic Considerations: no adjustment required

Recommendations:
1. Continue the proposed regimen with routine monitoring

Emergency Pharmacology Considerations:
- Keep rescue medications available at the bedside

References:
- Institutional medication safety protocol"""


def triage_output(i, pred):
    return f"""KTAS CLASSIFICATION: {pred}

Detailed Justification: The presentation for case {case_id(i)} meets the criteria for this acuity level based on symptom severity, vital signs, and risk of deterioration.

Patient Assessment:
1. Presenting Symptoms: as described in the narrative
2. Vital Signs: recorded at triage and within the documented ranges
3. Medical History: reviewed with the patient or accompanying family
4. Medications and Allergies: reconciled, RxNorm verification completed
5. Pain Assessment: documented on the standardized scale
6. Mental Status: assessed and documented

Critical Findings: Findings requiring team awareness are listed in the justification.

Recommended Actions: Route the patient according to the assigned acuity level.

Additional Information: None."""


def management_output(i, expert, ktas_text):
    diagnosis, dispo, med, tests = DIAGNOSES[expert]
    return f"""EMERGENCY DEPARTMENT MANAGEMENT DECISION

KTAS Classification Review: {ktas_text}

Clinical Assessment:
- Primary Diagnosis: {diagnosis}
- Critical Findings: key issues for case {case_id(i)} highlighted to the receiving team

Disposition Decision: {dispo}

Justification: The disposition follows from the working diagnosis, the observed trajectory, and the resources required for safe ongoing care.

Management Plan:
1. Immediate Actions:
   - a. Implement the treatment plan as proposed
   - b. Reassess after initial therapy
2. Medications:
   - a. {med}
3. Diagnostic Tests:
   - a. {tests}
4. Consultations:
   - a. Specialist consultation if the course deviates from expected
5. Monitoring:
   - a. Vital signs per acuity protocol

Resource Allocation: Standard resources for this acuity level.

Communication Plan:
- Patient/Family: condition and plan explained
- Healthcare Team: handover completed with the receiving team

Contingency Planning: Reassess and escalate if the condition deteriorates.

Additional Considerations: None.

References: Institutional pathways."""


def single_agent_ktas_text(pred):
    if pred is None:
        return ("The available information is insufficient to assign a definitive "
                "KTAS level for this presentation.")
    return str(pred)


def main():
    CASES_DIR.mkdir(parents=True, exist_ok=True)
    SCRIPTED_DIR.mkdir(parents=True, exist_ok=True)

    cases = []
    multi_entries = []
    single_entries = []

    for idx, (expert, multi_pred, single_pred) in enumerate(ASSIGNMENTS, start=1):
        cid = case_id(idx)
        narrative_pool = NARRATIVES[expert]
        narrative = narrative_pool[(idx - 1) % len(narrative_pool)]
        case = {
            "case_id": cid,
            "narrative": narrative,
            "annotation": make_annotation(idx, expert),
        }
        if idx in FINDINGS:
            case["findings"] = FINDINGS[idx]
        cases.append(case)

        multi_entries += [
            {"role": "emergency_physician", "case_id": cid,
             "text": physician_output(idx, expert)},
            {"role": "pharmacist", "case_id": cid,
             "text": pharmacist_output(idx, expert)},
            {"role": "triage_nurse", "case_id": cid,
             "text": triage_output(idx, multi_pred)},
            {"role": "ed_doctor_in_charge", "case_id": cid,
             "text": management_output(idx, expert, str(multi_pred))},
        ]
        single_entries.append(
            {"role": "ed_doctor_in_charge", "case_id": cid,
             "text": management_output(idx, expert, single_agent_ktas_text(single_pred))})

    with open(CASES_DIR / "ktas42.jsonl", "w") as f:
        for case in cases:
            f.write(json.dumps(case, ensure_ascii=False) + "\n")

    with open(SCRIPTED_DIR / "multi_agent.json", "w") as f:
        json.dump({"key_mode": "by_role_and_case", "entries": multi_entries}, f,
                  ensure_ascii=False, indent=1)
        f.write("\n")

    with open(SCRIPTED_DIR / "single_agent.json", "w") as f:
        json.dump({"key_mode": "by_role_and_case", "entries": single_entries}, f,
                  ensure_ascii=False, indent=1)
        f.write("\n")

    print(f"wrote {len(cases)} cases, {len(multi_entries)} multi entries, "
          f"{len(single_entries)} single entries")


if __name__ == "__main__":
    main()
