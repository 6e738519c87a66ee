// Guided gesture-classification wizard.
//
// The question order is fixed: first whether the gesture illustrates what was
// said (if yes, it is a topic gesture and the wizard ends, no frame picker),
// then the interactive criteria, then the gesture-form fields. The verdict
// shown at review always comes from the server's /classify response; the
// wizard contains no classification logic of its own.

import type {
  ArmConfiguration,
  ClassificationResultPayload,
  ComprehenderPosition,
  GestureFeaturesPayload,
  HandShape,
  MotionPattern,
  PalmOrientation,
  Provenance,
} from './types.js';
import { DEFAULT_FEATURES } from './types.js';

export type WizardStep = 'topic_check' | 'interactive_criteria' | 'feature_entry' | 'review';

export interface WizardState {
  step: WizardStep;
  featuresSoFar: Partial<GestureFeaturesPayload>;
  serverResult: ClassificationResultPayload | null;
}

export interface InteractiveCriteriaAnswers {
  paraphrase: string | null;
  paraphraseTopicIndependent: boolean;
  paraphraseAddressedToInterlocutor: boolean;
  orientationTowardComprehender: boolean;
}

export interface GestureFormAnswers {
  palmOrientation: PalmOrientation;
  armConfiguration: ArmConfiguration;
  motionPattern: MotionPattern;
  handShape: HandShape;
  comprehenderPosition: ComprehenderPosition;
}

export interface GestureDraft {
  features: GestureFeaturesPayload;
  evokedFrame: string | null;
  provenance: Provenance;
  classifierVerdict: ClassificationResultPayload | null;
}

export type ClassifyFn = (
  features: GestureFeaturesPayload,
) => Promise<ClassificationResultPayload>;

export type WizardOutcome = 'open' | 'topic' | 'accepted' | 'abandoned';

export class ClassificationWizard {
  private readonly classify: ClassifyFn;
  private state: WizardState;
  private outcome: WizardOutcome = 'open';
  private criteriaAnswered = false;

  constructor(classify: ClassifyFn) {
    this.classify = classify;
    this.state = { step: 'topic_check', featuresSoFar: {}, serverResult: null };
  }

  get step(): WizardStep {
    return this.state.step;
  }

  get snapshot(): WizardState {
    return {
      step: this.state.step,
      featuresSoFar: { ...this.state.featuresSoFar },
      serverResult: this.state.serverResult,
    };
  }

  get finished(): WizardOutcome {
    return this.outcome;
  }

  // The verdict the UI displays: always the server's, never computed here.
  get displayedVerdict(): string | null {
    return this.state.serverResult?.verdict ?? null;
  }

  get serverResult(): ClassificationResultPayload | null {
    return this.state.serverResult;
  }

  // Whether the review step should offer a frame picker at all; a topic
  // outcome never reaches one.
  get showsFramePicker(): boolean {
    return this.state.step === 'review';
  }

  answerTopicCheck(illustratesSpeech: boolean): void {
    this.requireStep('topic_check');
    if (illustratesSpeech) {
      this.state.featuresSoFar = { topic_illustrative: true };
      this.outcome = 'topic';
      return;
    }
    this.state.featuresSoFar = { topic_illustrative: false };
    this.state.step = 'interactive_criteria';
  }

  answerInteractiveCriteria(answers: InteractiveCriteriaAnswers): void {
    this.requireStep('interactive_criteria');
    const features = this.state.featuresSoFar;
    if (answers.paraphrase !== null && answers.paraphrase !== '') {
      features.paraphrase = answers.paraphrase;
      features.paraphrase_topic_independent = answers.paraphraseTopicIndependent;
      features.paraphrase_addressed_to_interlocutor = answers.paraphraseAddressedToInterlocutor;
    } else {
      features.paraphrase_topic_independent = false;
      features.paraphrase_addressed_to_interlocutor = false;
    }
    features.orientation_toward_comprehender = answers.orientationTowardComprehender;
    this.criteriaAnswered = true;
    this.state.step = 'feature_entry';
  }

  // Completes feature entry and asks the server for its verdict; only then
  // does the wizard reach review.
  async submitGestureForm(answers: GestureFormAnswers): Promise<ClassificationResultPayload> {
    this.requireStep('feature_entry');
    if (!this.criteriaAnswered) {
      throw new Error('interactive criteria must be answered before review');
    }
    this.state.featuresSoFar.palm_orientation = answers.palmOrientation;
    this.state.featuresSoFar.arm_configuration = answers.armConfiguration;
    this.state.featuresSoFar.motion_pattern = answers.motionPattern;
    this.state.featuresSoFar.hand_shape = answers.handShape;
    this.state.featuresSoFar.comprehender_position = answers.comprehenderPosition;
    const result = await this.classify(this.completeFeatures());
    this.state.serverResult = result;
    this.state.step = 'review';
    return result;
  }

  completeFeatures(): GestureFeaturesPayload {
    return { ...DEFAULT_FEATURES, ...this.state.featuresSoFar };
  }

  // Accept the server's proposal, or override with another frame. Accepting
  // records classifier provenance; overriding (or picking a frame when the
  // server abstained) records manual provenance. The server's response rides
  // along unchanged either way.
  accept(overrideFrame?: string): GestureDraft {
    if (this.outcome === 'topic') {
      this.outcome = 'accepted';
      return {
        features: this.completeFeatures(),
        evokedFrame: null,
        provenance: 'manual',
        classifierVerdict: null,
      };
    }
    this.requireStep('review');
    const serverVerdict = this.displayedVerdict;
    const chosen = overrideFrame ?? serverVerdict;
    const followedServer = serverVerdict !== null && chosen === serverVerdict;
    this.outcome = 'accepted';
    return {
      features: this.completeFeatures(),
      evokedFrame: chosen,
      provenance: followedServer ? 'classifier' : 'manual',
      classifierVerdict: this.state.serverResult,
    };
  }

  // Walk away at any step: nothing is persisted and the wizard is spent.
  abandon(): void {
    if (this.outcome === 'open' || this.outcome === 'topic') {
      this.outcome = 'abandoned';
    }
  }

  private requireStep(expected: WizardStep): void {
    if (this.outcome !== 'open') {
      throw new Error(`wizard already finished (${this.outcome})`);
    }
    if (this.state.step !== expected) {
      throw new Error(`expected step ${expected}, wizard is at ${this.state.step}`);
    }
  }
}
