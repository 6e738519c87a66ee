// DOM wiring for the annotation workbench: local video playback, a canvas
// overlay for drawing and editing keyframed boxes, a timeline with keyframe
// markers, and the classification wizard panel. Media files never leave the
// browser; only metadata and geometry go to the service.

import { ApiClient, ApiError } from './api.js';
import {
  boxAt,
  clampBox,
  fromPixels,
  isInsideUnitSquare,
  moveBox,
  toPixels,
  trackSpan,
  upsertKeyframe,
  type Rect,
} from './boxes.js';
import { TimelineModel } from './timeline.js';
import {
  ClassificationWizard,
  type GestureFormAnswers,
  type InteractiveCriteriaAnswers,
} from './wizard.js';
import {
  DEFAULT_FEATURES,
  rationalToNumber,
  type BoxPayload,
  type DocumentPayload,
  type GesturePayload,
  type TrackPayload,
  type VisualObjectPayload,
} from './types.js';

interface DraftTrack {
  id: string;
  cvName: string;
  track: TrackPayload;
  color: string;
}

const TRACK_COLORS = ['#e4572e', '#17bebb', '#ffc914', '#76b041', '#b33f62'];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

class AnnotatorApp {
  private api: ApiClient;
  private video = el<HTMLVideoElement>('video');
  private overlay = el<HTMLCanvasElement>('overlay');
  private timelineCanvas = el<HTMLCanvasElement>('timeline');
  private status = el<HTMLDivElement>('status');
  private wizardPanel = el<HTMLDivElement>('wizard');
  private document_: DocumentPayload | null = null;
  private drafts: DraftTrack[] = [];
  private selected: string | null = null;
  private gestures: GesturePayload[] = [];
  private objects = new Map<string, VisualObjectPayload>();
  private timeline = new TimelineModel(1, 800);
  private wizard: ClassificationWizard | null = null;
  private dragStart: { x: number; y: number } | null = null;
  private dragBoxStart: BoxPayload | null = null;
  private mode: 'draw' | 'move' = 'draw';

  constructor() {
    this.api = new ApiClient(
      (el<HTMLInputElement>('server-url') as HTMLInputElement).value || 'http://127.0.0.1:8787',
    );
    this.bind();
  }

  private bind(): void {
    el<HTMLButtonElement>('connect').addEventListener('click', () => void this.connect());
    el<HTMLInputElement>('video-file').addEventListener('change', (event) => {
      const input = event.target as HTMLInputElement;
      if (input.files && input.files[0]) {
        this.video.src = URL.createObjectURL(input.files[0]);
      }
    });
    el<HTMLButtonElement>('add-track').addEventListener('click', () => this.addDraftTrack());
    el<HTMLButtonElement>('add-keyframe').addEventListener('click', () => this.addKeyframe());
    el<HTMLButtonElement>('create-gesture').addEventListener('click', () => this.startWizard());
    this.video.addEventListener('timeupdate', () => {
      this.timeline.scrubTo(Math.round(this.video.currentTime * 1000));
      this.render();
    });
    this.overlay.addEventListener('pointerdown', (e) => this.onPointerDown(e));
    this.overlay.addEventListener('pointermove', (e) => this.onPointerMove(e));
    this.overlay.addEventListener('pointerup', (e) => this.onPointerUp(e));
    this.timelineCanvas.addEventListener('pointerdown', (e) => {
      const rect = this.timelineCanvas.getBoundingClientRect();
      const time = this.timeline.xToTime(e.clientX - rect.left);
      this.video.currentTime = time / 1000;
    });
    const modeSelect = el<HTMLSelectElement>('pointer-mode');
    modeSelect.addEventListener('change', () => {
      this.mode = modeSelect.value as 'draw' | 'move';
    });
  }

  private async connect(): Promise<void> {
    this.api = new ApiClient(el<HTMLInputElement>('server-url').value);
    try {
      const documents = await this.api.getDocuments();
      const picker = el<HTMLSelectElement>('document-picker');
      picker.innerHTML = '';
      for (const doc of documents) {
        const option = document.createElement('option');
        option.value = doc.id;
        option.textContent = `${doc.id} — ${doc.title}`;
        picker.appendChild(option);
      }
      picker.onchange = () => void this.selectDocument(picker.value);
      if (documents.length > 0) {
        await this.selectDocument(documents[0].id);
      }
      this.say(`connected; ${documents.length} documents`);
    } catch (error) {
      this.sayError(error);
    }
  }

  private async selectDocument(documentId: string): Promise<void> {
    const documents = await this.api.getDocuments();
    this.document_ = documents.find((d) => d.id === documentId) ?? null;
    if (!this.document_) {
      return;
    }
    this.timeline = new TimelineModel(this.document_.media.duration_ms, this.timelineCanvas.width);
    this.gestures = (await this.api.getGestures()).filter((g) => g.document === documentId);
    this.objects = new Map();
    const body = await fetch(`${el<HTMLInputElement>('server-url').value}/visual-objects`);
    const listing = (await body.json()) as { visual_objects?: VisualObjectPayload[] };
    for (const obj of listing.visual_objects ?? []) {
      if (obj.document === documentId) {
        this.objects.set(obj.id, obj);
      }
    }
    this.drafts = [];
    this.selected = null;
    this.say(`document ${documentId}: ${this.gestures.length} gestures on record`);
    this.render();
  }

  private addDraftTrack(): void {
    if (!this.document_) {
      this.say('connect and pick a document first');
      return;
    }
    const cvName = el<HTMLInputElement>('cv-name').value || 'Body_parts: mão';
    const id = `ui_${Date.now()}_${this.drafts.length}`;
    this.drafts.push({
      id,
      cvName,
      track: { keyframes: [] },
      color: TRACK_COLORS[this.drafts.length % TRACK_COLORS.length],
    });
    this.selected = id;
    this.say(`draft track ${id} (${cvName}); draw a box, then add keyframes`);
    this.renderTrackList();
  }

  private addKeyframe(): void {
    const draft = this.drafts.find((d) => d.id === this.selected);
    if (!draft) {
      this.say('select a draft track first');
      return;
    }
    const t = this.timeline.currentMs;
    const current = boxAt(draft.track, t) ??
      draft.track.keyframes[draft.track.keyframes.length - 1]?.box ??
      clampBox({ x: 0.4, y: 0.4, w: 0.2, h: 0.2 });
    draft.track = upsertKeyframe(draft.track, t, current);
    this.say(`keyframe at ${t}ms on ${draft.id}`);
    this.render();
  }

  // -- pointer handling over the video ------------------------------------------

  private viewRect(): Rect {
    return { left: 0, top: 0, width: this.overlay.width, height: this.overlay.height };
  }

  private onPointerDown(event: PointerEvent): void {
    const rect = this.overlay.getBoundingClientRect();
    this.dragStart = { x: event.clientX - rect.left, y: event.clientY - rect.top };
    const draft = this.drafts.find((d) => d.id === this.selected);
    const existing = draft ? boxAt(draft.track, this.timeline.currentMs) : null;
    this.dragBoxStart = this.mode === 'move' && existing ? existing : null;
    this.overlay.setPointerCapture(event.pointerId);
  }

  private onPointerMove(event: PointerEvent): void {
    if (!this.dragStart) {
      return;
    }
    const rect = this.overlay.getBoundingClientRect();
    const x = event.clientX - rect.left;
    const y = event.clientY - rect.top;
    const draft = this.drafts.find((d) => d.id === this.selected);
    if (!draft) {
      return;
    }
    const view = this.viewRect();
    let box: BoxPayload;
    if (this.dragBoxStart) {
      box = moveBox(
        this.dragBoxStart,
        (x - this.dragStart.x) / view.width,
        (y - this.dragStart.y) / view.height,
      );
    } else {
      box = fromPixels(
        {
          left: Math.min(this.dragStart.x, x),
          top: Math.min(this.dragStart.y, y),
          width: Math.abs(x - this.dragStart.x),
          height: Math.abs(y - this.dragStart.y),
        },
        view,
      );
    }
    draft.track = upsertKeyframe(draft.track, this.timeline.currentMs, box);
    this.render();
  }

  private onPointerUp(event: PointerEvent): void {
    this.dragStart = null;
    this.dragBoxStart = null;
    this.overlay.releasePointerCapture(event.pointerId);
  }

  // -- wizard ---------------------------------------------------------------------

  private startWizard(): void {
    if (!this.document_) {
      this.say('connect and pick a document first');
      return;
    }
    const members = this.drafts.filter((d) => d.track.keyframes.length > 0);
    if (members.length === 0) {
      this.say('draw at least one track before creating a gesture');
      return;
    }
    for (const member of members) {
      for (const kf of member.track.keyframes) {
        if (!isInsideUnitSquare(kf.box)) {
          this.say(`track ${member.id} has a box outside the frame; fix it first`);
          return;
        }
      }
    }
    this.wizard = new ClassificationWizard((features) => this.api.classify(features));
    this.renderWizard();
  }

  private renderWizard(): void {
    const wizard = this.wizard;
    const panel = this.wizardPanel;
    panel.innerHTML = '';
    if (!wizard) {
      return;
    }
    const heading = document.createElement('h3');
    heading.textContent = `wizard: ${wizard.step.replace('_', ' ')}`;
    panel.appendChild(heading);

    const cancel = document.createElement('button');
    cancel.textContent = 'cancel';
    cancel.onclick = () => {
      wizard.abandon();
      this.wizard = null;
      this.renderWizard();
      this.say('wizard abandoned; nothing saved');
    };

    if (wizard.step === 'topic_check' && wizard.finished === 'open') {
      panel.appendChild(this.question('Does the gesture illustrate something that was said?', [
        ['yes — topic gesture', () => {
          wizard.answerTopicCheck(true);
          this.say('topic gesture: no turn frame applies');
          this.renderWizard();
        }],
        ['no', () => {
          wizard.answerTopicCheck(false);
          this.renderWizard();
        }],
      ]));
    } else if (wizard.finished === 'topic') {
      const note = document.createElement('p');
      note.textContent = 'Topic gesture. Save without a turn frame?';
      panel.appendChild(note);
      const save = document.createElement('button');
      save.textContent = 'save topic gesture';
      save.onclick = () => void this.persistDraft();
      panel.appendChild(save);
    } else if (wizard.step === 'interactive_criteria') {
      panel.appendChild(this.criteriaForm(wizard));
    } else if (wizard.step === 'feature_entry') {
      panel.appendChild(this.gestureForm(wizard));
    } else if (wizard.step === 'review') {
      panel.appendChild(this.reviewPane(wizard));
    }
    panel.appendChild(cancel);
  }

  private question(text: string, options: [string, () => void][]): HTMLElement {
    const wrap = document.createElement('div');
    const p = document.createElement('p');
    p.textContent = text;
    wrap.appendChild(p);
    for (const [label, handler] of options) {
      const button = document.createElement('button');
      button.textContent = label;
      button.onclick = handler;
      wrap.appendChild(button);
    }
    return wrap;
  }

  private criteriaForm(wizard: ClassificationWizard): HTMLElement {
    const wrap = document.createElement('div');
    wrap.innerHTML = `
      <label>Paraphrase (what the gesture "says"): <input id="wz-paraphrase" type="text"></label>
      <label><input id="wz-independent" type="checkbox"> paraphrase is independent of the topic</label>
      <label><input id="wz-addressed" type="checkbox"> paraphrase is addressed to the interlocutor</label>
      <label><input id="wz-oriented" type="checkbox"> fingers/thumb/palm oriented toward the other person</label>
    `;
    const next = document.createElement('button');
    next.textContent = 'next';
    next.onclick = () => {
      const answers: InteractiveCriteriaAnswers = {
        paraphrase: (wrap.querySelector('#wz-paraphrase') as HTMLInputElement).value || null,
        paraphraseTopicIndependent: (wrap.querySelector('#wz-independent') as HTMLInputElement).checked,
        paraphraseAddressedToInterlocutor: (wrap.querySelector('#wz-addressed') as HTMLInputElement).checked,
        orientationTowardComprehender: (wrap.querySelector('#wz-oriented') as HTMLInputElement).checked,
      };
      wizard.answerInteractiveCriteria(answers);
      this.renderWizard();
    };
    wrap.appendChild(next);
    return wrap;
  }

  private gestureForm(wizard: ClassificationWizard): HTMLElement {
    const wrap = document.createElement('div');
    const fields: [keyof GestureFormAnswers, string, string[]][] = [
      ['palmOrientation', 'palm orientation', ['up', 'down', 'toward_comprehender', 'lateral', 'inward']],
      ['armConfiguration', 'arm configuration', ['extended_forward', 'extended_lateral', 'bent_upward', 'reaching', 'retracted']],
      ['motionPattern', 'motion pattern', ['static_hold', 'extend', 'retract', 'circular', 'beat', 'nod']],
      ['handShape', 'hand shape', ['open_palm', 'fingers_flexed', 'fingers_extended', 'grasp']],
      ['comprehenderPosition', 'comprehender position', ['facing', 'beside', 'other']],
    ];
    const selects = new Map<string, HTMLSelectElement>();
    for (const [key, label, values] of fields) {
      const row = document.createElement('label');
      row.textContent = `${label}: `;
      const select = document.createElement('select');
      for (const value of values) {
        const option = document.createElement('option');
        option.value = value;
        option.textContent = value;
        select.appendChild(option);
      }
      selects.set(key, select);
      row.appendChild(select);
      wrap.appendChild(row);
    }
    const submit = document.createElement('button');
    submit.textContent = 'classify';
    submit.onclick = async () => {
      const answers = {
        palmOrientation: selects.get('palmOrientation')!.value,
        armConfiguration: selects.get('armConfiguration')!.value,
        motionPattern: selects.get('motionPattern')!.value,
        handShape: selects.get('handShape')!.value,
        comprehenderPosition: selects.get('comprehenderPosition')!.value,
      } as GestureFormAnswers;
      try {
        await wizard.submitGestureForm(answers);
        this.renderWizard();
      } catch (error) {
        this.sayError(error);
      }
    };
    wrap.appendChild(submit);
    return wrap;
  }

  private reviewPane(wizard: ClassificationWizard): HTMLElement {
    const wrap = document.createElement('div');
    const result = wizard.serverResult!;
    const verdict = document.createElement('p');
    verdict.id = 'wz-verdict';
    verdict.textContent = wizard.displayedVerdict
      ? `proposed frame: ${wizard.displayedVerdict}`
      : `no frame proposed (${result.interactivity})`;
    wrap.appendChild(verdict);
    const list = document.createElement('ul');
    for (const entry of result.ranking) {
      const item = document.createElement('li');
      item.textContent = `${entry.frame}: ${rationalToNumber(entry.score).toFixed(3)}`;
      list.appendChild(item);
    }
    wrap.appendChild(list);

    const picker = document.createElement('select');
    picker.id = 'wz-frame-picker';
    const keep = document.createElement('option');
    keep.value = '';
    keep.textContent = wizard.displayedVerdict
      ? `accept ${wizard.displayedVerdict}`
      : 'pick a frame manually';
    picker.appendChild(keep);
    for (const entry of result.ranking) {
      const option = document.createElement('option');
      option.value = entry.frame;
      option.textContent = `override: ${entry.frame}`;
      picker.appendChild(option);
    }
    wrap.appendChild(picker);

    const save = document.createElement('button');
    save.textContent = 'save gesture';
    save.onclick = () => void this.persistDraft(picker.value || undefined);
    wrap.appendChild(save);
    return wrap;
  }

  private async persistDraft(overrideFrame?: string): Promise<void> {
    if (!this.wizard || !this.document_) {
      return;
    }
    const draft = this.wizard.accept(overrideFrame);
    const members = this.drafts.filter((d) => d.track.keyframes.length > 0);
    const memberObjects = members.map((m) => ({
      id: m.id,
      document: this.document_!.id,
      cv_name: m.cvName,
      category_frame: m.cvName.split(':')[0].trim() || 'Body_parts',
      category_lu: {
        lemma: (m.cvName.split(':')[1] ?? 'mão').trim(),
        pos: 'noun' as const,
        frame: m.cvName.split(':')[0].trim() || 'Body_parts',
      },
      track: m.track,
    }));
    const payload = {
      document: this.document_.id,
      member_objects: memberObjects,
      members: memberObjects.map((o) => o.id),
      features: { ...DEFAULT_FEATURES, ...draft.features },
      provenance: draft.provenance,
      version: 1,
    } as GesturePayload & { member_objects: unknown[] };
    if (draft.evokedFrame) {
      payload.evoked_frame = draft.evokedFrame;
    }
    if (draft.classifierVerdict) {
      payload.classifier_verdict = draft.classifierVerdict;
    }
    try {
      const created = await this.api.postGesture(payload);
      this.say(`saved gesture ${created.id} (${created.members.length} members)`);
      this.wizard = null;
      this.drafts = [];
      await this.selectDocument(this.document_.id);
      this.renderWizard();
    } catch (error) {
      this.sayError(error);
    }
  }

  // -- rendering --------------------------------------------------------------------

  private render(): void {
    const ctx = this.overlay.getContext('2d')!;
    ctx.clearRect(0, 0, this.overlay.width, this.overlay.height);
    const view = this.viewRect();
    const t = this.timeline.currentMs;
    for (const [id, obj] of this.objects) {
      const box = boxAt(obj.track, t);
      if (box) {
        this.drawBox(ctx, toPixels(box, view), '#888888', id);
      }
    }
    for (const draft of this.drafts) {
      const box = boxAt(draft.track, t);
      if (box) {
        const width = draft.id === this.selected ? 3 : 2;
        this.drawBox(ctx, toPixels(box, view), draft.color, draft.id, width);
      }
    }
    this.renderTimeline();
  }

  private drawBox(
    ctx: CanvasRenderingContext2D, rect: Rect, color: string, label: string, width = 2,
  ): void {
    ctx.strokeStyle = color;
    ctx.lineWidth = width;
    ctx.strokeRect(rect.left, rect.top, rect.width, rect.height);
    ctx.fillStyle = color;
    ctx.font = '11px sans-serif';
    ctx.fillText(label, rect.left + 2, rect.top + 12);
  }

  private renderTimeline(): void {
    const ctx = this.timelineCanvas.getContext('2d')!;
    const { width, height } = this.timelineCanvas;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = '#e8e8e8';
    ctx.fillRect(0, 0, width, height);
    const tracks = new Map<string, TrackPayload>();
    for (const draft of this.drafts) {
      tracks.set(draft.id, draft.track);
    }
    for (const gesture of this.gestures) {
      for (const member of gesture.members) {
        const obj = this.objects.get(member);
        if (obj) {
          const span = trackSpan(obj.track);
          if (span) {
            ctx.fillStyle = '#b8c4d8';
            ctx.fillRect(
              this.timeline.timeToX(span[0]), 8,
              Math.max(this.timeline.timeToX(span[1]) - this.timeline.timeToX(span[0]), 2),
              height - 16,
            );
          }
        }
      }
    }
    for (const marker of this.timeline.markers(tracks)) {
      ctx.fillStyle = '#e4572e';
      ctx.fillRect(marker.x - 1, 0, 2, height);
    }
    ctx.fillStyle = '#222222';
    const cursor = this.timeline.timeToX(this.timeline.currentMs);
    ctx.fillRect(cursor - 1, 0, 2, height);
  }

  private renderTrackList(): void {
    const list = el<HTMLUListElement>('track-list');
    list.innerHTML = '';
    for (const draft of this.drafts) {
      const item = document.createElement('li');
      const button = document.createElement('button');
      button.textContent = `${draft.id} (${draft.track.keyframes.length} keyframes)`;
      button.style.borderLeft = `6px solid ${draft.color}`;
      button.onclick = () => {
        this.selected = draft.id;
        this.render();
      };
      item.appendChild(button);
      list.appendChild(item);
    }
  }

  private say(message: string): void {
    this.status.textContent = message;
  }

  private sayError(error: unknown): void {
    if (error instanceof ApiError) {
      // Surface the service's error body verbatim.
      this.status.textContent =
        `${error.body.code} [${error.body.rule_id}]: ${error.body.message}` +
        (error.isConflict ? ' — reload the gesture and retry' : '');
    } else {
      this.status.textContent = String(error);
    }
  }
}

if (typeof document !== 'undefined' && document.getElementById('video')) {
  new AnnotatorApp();
}
