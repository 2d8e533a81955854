/**
 * Browser trial runner.
 *
 * Screen flow: information screen -> Continue -> instruction modal (reopenable
 * from the top-right button) -> trial loop. Trials demand both an answer and
 * a confidence rating before submit; the confirmation screen advances on
 * click, spacebar, or the server's auto-advance window; a rest screen with a
 * progress bar appears between test-trial batches. Practice trials show
 * correctness feedback, test trials never do (the API payloads do not carry
 * the answer). A failed request raises a retry banner and keeps the pending
 * action so no response is lost.
 *
 * Keyboard: 1-5 picks an answer, then 1-5 rates confidence (Tab switches
 * panels), Enter submits, Space continues, i opens instructions, Escape
 * closes them, r retries after a connection error.
 */

import { ApiError, CurrentPayload, FetchLike, GatewayClient } from './api.js';
import { Now, ReactionClock } from './clock.js';
import { ProgressBar } from './progress.js';

export const DEFAULT_AUTO_ADVANCE_MS = 3000;

const INFO_TEXT =
  'This study compares how people and computer-vision models recognise ' +
  'objects in heavily scrambled images. You will see one image at a time ' +
  'with five category options. There is no time limit. Your choices, ' +
  'confidence ratings, and response times are recorded.';

const TRIAL_EXCERPT =
  'Pick the option closest to the object, rate your confidence, then submit. ' +
  'Keys: 1-5 answer, 1-5 confidence, Enter submit, Space continue.';

export interface RunnerOptions {
  agentId?: string;
  fetchImpl?: FetchLike;
  storage?: Storage;
  now?: Now;
  defaultAutoAdvanceMs?: number;
}

type PanelName = 'options' | 'confidence';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class TrialRunner {
  private readonly client: GatewayClient;
  private readonly storage: Storage | null;
  private readonly storageKey: string;
  private readonly clock: ReactionClock;
  private readonly defaultAutoAdvanceMs: number;
  private readonly agentId: string;
  private readonly keyHandler = (event: KeyboardEvent) => this.onKey(event);

  private sessionId: string | null = null;
  private instructions = '';
  private payload: CurrentPayload | null = null;
  private choice: number | null = null;
  private confidence: number | null = null;
  private activePanel: PanelName = 'options';
  private modalOpen = false;
  private modalShownOnce = false;
  private autoAdvanceTimer: ReturnType<typeof setTimeout> | null = null;
  private pendingRetry: (() => Promise<void>) | null = null;
  private disposed = false;

  constructor(
    private readonly root: HTMLElement,
    baseUrl: string,
    options: RunnerOptions = {},
  ) {
    this.client = new GatewayClient(baseUrl, options.fetchImpl);
    this.storage = options.storage ?? (typeof localStorage === 'undefined' ? null : localStorage);
    this.storageKey = `shufflelab.session.${baseUrl}`;
    this.clock = new ReactionClock(options.now);
    this.defaultAutoAdvanceMs = options.defaultAutoAdvanceMs ?? DEFAULT_AUTO_ADVANCE_MS;
    this.agentId = options.agentId ?? 'anonymous';
    document.addEventListener('keydown', this.keyHandler);
  }

  dispose(): void {
    this.disposed = true;
    this.clearTimer();
    document.removeEventListener('keydown', this.keyHandler);
  }

  get phase(): string {
    return this.payload?.phase ?? 'starting';
  }

  async start(): Promise<void> {
    const stored = this.storage?.getItem(this.storageKey) ?? null;
    if (stored) {
      try {
        this.payload = await this.client.current(stored);
        this.sessionId = stored;
        this.modalShownOnce = true; // resuming: never re-block with the modal
        this.render();
        return;
      } catch (err) {
        if (!(err instanceof ApiError && err.status === 404)) throw err;
        this.storage?.removeItem(this.storageKey);
      }
    }
    await this.guarded(async () => {
      const created = await this.client.createSession(this.agentId);
      this.sessionId = created.session_id;
      this.instructions = created.instructions;
      this.storage?.setItem(this.storageKey, created.session_id);
      await this.refresh();
    });
  }

  // -- server interaction -------------------------------------------------

  private async guarded(action: () => Promise<void>): Promise<void> {
    try {
      await action();
      this.pendingRetry = null;
    } catch (err) {
      this.pendingRetry = action;
      this.showRetryBanner(err);
    }
  }

  private async refresh(): Promise<void> {
    if (!this.sessionId || this.disposed) return;
    this.payload = await this.client.current(this.sessionId);
    if (this.payload.instructions) this.instructions = this.payload.instructions;
    this.render();
  }

  private async continueFrom(phase: string): Promise<void> {
    if (this.payload?.phase !== phase || !this.sessionId) return;
    this.clearTimer();
    const sid = this.sessionId;
    await this.guarded(async () => {
      await this.client.advance(sid);
      await this.refresh();
      if (!this.modalShownOnce && this.payload?.phase === 'in_trial') {
        this.modalShownOnce = true;
        this.openModal();
      }
    });
  }

  private async submit(): Promise<void> {
    if (this.payload?.phase !== 'in_trial' || !this.sessionId) return;
    if (this.choice === null || this.confidence === null) return;
    const sid = this.sessionId;
    const body = {
      choice_index: this.choice,
      confidence: this.confidence,
      reaction_time_ms: Math.round(this.clock.elapsedMs() * 1000) / 1000,
    };
    this.clock.stop();
    await this.guarded(async () => {
      await this.client.submit(sid, body);
      await this.refresh();
    });
  }

  // -- input --------------------------------------------------------------

  private onKey(event: KeyboardEvent): void {
    if (this.disposed) return;
    if (this.pendingRetry) {
      if (event.key === 'r' || event.key === 'R') {
        event.preventDefault();
        void this.retry();
      }
      return;
    }
    if (this.modalOpen) {
      if (event.key === 'Escape') {
        event.preventDefault();
        this.closeModal();
      }
      return;
    }
    const phase = this.payload?.phase;
    if (event.key === 'i' && phase && phase !== 'instructions') {
      event.preventDefault();
      this.openModal();
      return;
    }
    switch (phase) {
      case 'instructions':
        if (event.key === ' ' || event.key === 'Enter') {
          event.preventDefault();
          void this.continueFrom('instructions');
        }
        break;
      case 'in_trial':
        this.onTrialKey(event);
        break;
      case 'confirmation':
        if (event.key === ' ') {
          event.preventDefault();
          void this.continueFrom('confirmation');
        }
        break;
      case 'rest':
        if (event.key === ' ') {
          event.preventDefault();
          void this.continueFrom('rest');
        }
        break;
      default:
        break;
    }
  }

  private onTrialKey(event: KeyboardEvent): void {
    if (event.key >= '1' && event.key <= '5') {
      event.preventDefault();
      const value = Number(event.key) - 1;
      if (this.activePanel === 'options') this.selectOption(value);
      else this.selectConfidence(value + 1);
    } else if (event.key === 'Tab') {
      event.preventDefault();
      this.activePanel = this.activePanel === 'options' ? 'confidence' : 'options';
      this.syncTrialControls();
    } else if (event.key === 'Enter') {
      event.preventDefault();
      void this.submit();
    }
  }

  private selectOption(index: number): void {
    const options = this.payload?.options ?? [];
    if (index < 0 || index >= options.length) return;
    this.choice = index;
    this.activePanel = 'confidence';
    this.syncTrialControls();
  }

  private selectConfidence(level: number): void {
    if (level < 1 || level > 5) return;
    this.confidence = level;
    this.syncTrialControls();
  }

  private async retry(): Promise<void> {
    const action = this.pendingRetry;
    if (!action) return;
    this.pendingRetry = null;
    this.root.querySelector('.retry-banner')?.remove();
    await this.guarded(action);
  }

  // -- rendering ----------------------------------------------------------

  private clearTimer(): void {
    if (this.autoAdvanceTimer !== null) {
      clearTimeout(this.autoAdvanceTimer);
      this.autoAdvanceTimer = null;
    }
  }

  private render(): void {
    if (this.disposed || !this.payload) return;
    this.clearTimer();
    this.modalOpen = false;
    this.root.textContent = '';
    const payload = this.payload;

    const bar = el('header', 'topbar');
    bar.appendChild(el('span', 'topbar-title', 'Object recognition study'));
    if (payload.phase !== 'instructions') {
      const btn = el('button', 'instructions-button', 'Instructions');
      btn.addEventListener('click', () => this.openModal());
      bar.appendChild(btn);
    }
    this.root.appendChild(bar);

    switch (payload.phase) {
      case 'instructions':
        this.renderInfo();
        break;
      case 'in_trial':
        this.renderTrial(payload);
        break;
      case 'confirmation':
        this.renderConfirmation(payload);
        break;
      case 'rest':
        this.renderRest(payload);
        break;
      case 'done':
        this.renderDone(payload);
        break;
    }
  }

  private renderInfo(): void {
    const screen = el('section', 'screen info-screen');
    screen.appendChild(el('h1', undefined, 'Welcome'));
    screen.appendChild(el('p', 'info-text', INFO_TEXT));
    screen.appendChild(el('p', 'info-hint', 'Press Continue (or the spacebar) to begin.'));
    const btn = el('button', 'primary continue-button', 'Continue');
    btn.addEventListener('click', () => void this.continueFrom('instructions'));
    screen.appendChild(btn);
    this.root.appendChild(screen);
  }

  private renderTrial(payload: CurrentPayload): void {
    this.choice = null;
    this.confidence = null;
    this.activePanel = 'options';

    const screen = el('section', 'screen trial-screen');
    const head = el('div', 'trial-head');
    head.appendChild(
      el('span', 'trial-counter', `Trial ${(payload.trial_index ?? 0) + 1} of ${payload.total}`),
    );
    if (payload.trial_phase === 'practice') {
      head.appendChild(el('span', 'practice-badge', 'practice'));
    }
    screen.appendChild(head);
    const progress = new ProgressBar(screen);
    progress.update(payload.progress.completed, payload.progress.total);

    const img = el('img', 'stimulus');
    img.alt = 'stimulus';
    img.src = `data:image/png;base64,${payload.image ?? ''}`;
    screen.appendChild(img);

    const optionPanel = el('div', 'panel options-panel');
    optionPanel.appendChild(el('h2', undefined, 'What do you see?'));
    const optionList = el('div', 'option-list');
    (payload.options ?? []).forEach((label, index) => {
      const btn = el('button', 'option-button', `${index + 1}. ${label}`);
      btn.dataset.index = String(index);
      btn.addEventListener('click', () => this.selectOption(index));
      optionList.appendChild(btn);
    });
    optionPanel.appendChild(optionList);
    screen.appendChild(optionPanel);

    const confidencePanel = el('div', 'panel confidence-panel');
    confidencePanel.appendChild(el('h2', undefined, 'Confidence (1 least - 5 most)'));
    const confidenceList = el('div', 'confidence-list');
    for (let level = 1; level <= 5; level += 1) {
      const btn = el('button', 'confidence-button', String(level));
      btn.dataset.level = String(level);
      btn.addEventListener('click', () => this.selectConfidence(level));
      confidenceList.appendChild(btn);
    }
    confidencePanel.appendChild(confidenceList);
    screen.appendChild(confidencePanel);

    const submit = el('button', 'primary submit-button', 'Submit');
    submit.disabled = true;
    submit.addEventListener('click', () => void this.submit());
    screen.appendChild(submit);
    screen.appendChild(el('p', 'excerpt', TRIAL_EXCERPT));

    this.root.appendChild(screen);
    this.syncTrialControls();
    this.clock.start(); // stimulus is on screen from this point
  }

  private syncTrialControls(): void {
    this.root.querySelectorAll<HTMLButtonElement>('.option-button').forEach((btn) => {
      btn.classList.toggle('selected', Number(btn.dataset.index) === this.choice);
    });
    this.root.querySelectorAll<HTMLButtonElement>('.confidence-button').forEach((btn) => {
      btn.classList.toggle('selected', Number(btn.dataset.level) === this.confidence);
    });
    this.root
      .querySelector('.options-panel')
      ?.classList.toggle('active', this.activePanel === 'options');
    this.root
      .querySelector('.confidence-panel')
      ?.classList.toggle('active', this.activePanel === 'confidence');
    const submit = this.root.querySelector<HTMLButtonElement>('.submit-button');
    if (submit) submit.disabled = this.choice === null || this.confidence === null;
  }

  private renderConfirmation(payload: CurrentPayload): void {
    const screen = el('section', 'screen confirmation-screen');
    screen.appendChild(el('h1', undefined, 'Response recorded'));
    if (payload.trial_phase === 'practice' && payload.feedback_correct !== null) {
      const verdict = payload.feedback_correct ? 'Correct' : 'Incorrect';
      screen.appendChild(el('p', `feedback ${verdict.toLowerCase()}`, verdict));
    }
    screen.appendChild(
      el('p', 'confirm-hint', 'Continue by clicking, pressing the spacebar, or just waiting.'),
    );
    const btn = el('button', 'primary continue-button', 'Continue');
    btn.addEventListener('click', () => void this.continueFrom('confirmation'));
    screen.appendChild(btn);
    this.root.appendChild(screen);

    const waitMs = payload.auto_advance_ms ?? this.defaultAutoAdvanceMs;
    this.autoAdvanceTimer = setTimeout(() => {
      this.autoAdvanceTimer = null;
      void this.continueFrom('confirmation');
    }, waitMs);
  }

  private renderRest(payload: CurrentPayload): void {
    const screen = el('section', 'screen rest-screen');
    screen.appendChild(el('h1', undefined, 'Take a short rest'));
    const progress = new ProgressBar(screen);
    progress.update(payload.test_completed ?? 0, payload.test_total ?? 0);
    screen.appendChild(el('p', 'rest-hint', 'Continue whenever you are ready (spacebar works).'));
    const btn = el('button', 'primary continue-button', 'Continue');
    btn.addEventListener('click', () => void this.continueFrom('rest'));
    screen.appendChild(btn);
    this.root.appendChild(screen);
  }

  private renderDone(payload: CurrentPayload): void {
    const screen = el('section', 'screen done-screen');
    screen.appendChild(el('h1', undefined, 'All done'));
    screen.appendChild(
      el('p', undefined, `You completed ${payload.progress.completed} trials. Thank you!`),
    );
    this.root.appendChild(screen);
    this.storage?.removeItem(this.storageKey);
  }

  // -- modal and banner -----------------------------------------------------

  private openModal(): void {
    if (this.modalOpen) return;
    this.modalOpen = true;
    const overlay = el('div', 'modal-overlay');
    const modal = el('div', 'modal');
    modal.appendChild(el('h2', undefined, 'Instructions'));
    modal.appendChild(el('p', 'modal-text', this.instructions || INFO_TEXT));
    const close = el('button', 'primary modal-close', 'Close');
    close.addEventListener('click', () => this.closeModal());
    modal.appendChild(close);
    overlay.appendChild(modal);
    this.root.appendChild(overlay);
  }

  private closeModal(): void {
    this.modalOpen = false;
    this.root.querySelector('.modal-overlay')?.remove();
  }

  private showRetryBanner(err: unknown): void {
    this.root.querySelector('.retry-banner')?.remove();
    const banner = el('div', 'retry-banner');
    const reason = err instanceof Error ? err.message : String(err);
    banner.appendChild(
      el('span', 'retry-text', `Connection problem (${reason}). Your response is saved locally.`),
    );
    const btn = el('button', 'retry-button', 'Retry (r)');
    btn.addEventListener('click', () => void this.retry());
    banner.appendChild(btn);
    this.root.appendChild(banner);
  }
}
